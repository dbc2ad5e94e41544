#pragma once

#include "batchkit/batch_code.hpp"

namespace batchkit {

/// Subcube code on n database symbols: two buckets holding each half of x
/// and a third holding their coordinate-wise sum, each bucket read at most t
/// times. G is n x 1.5n with column blocks e_j, e_{n/2+j}, e_j + e_{n/2+j}.
///
/// Claims m = 2. Distinct-index requests of size 2t are also served, but a
/// symbol appears in only two columns, so repeated requests cap m at 2.
LinearBatchCode subcube_code(std::size_t n, std::size_t t, const PrimeField& field = PrimeField(2));

/// [G1 | G2] with singleton buckets; claims m1 + m2.
LinearBatchCode concat_codes(const LinearBatchCode& c1, const LinearBatchCode& c2);

/// Block-diagonal [[G1, 0], [0, G2]]; claims min(m1, m2).
LinearBatchCode direct_sum(const LinearBatchCode& c1, const LinearBatchCode& c2);

/// Appends one database symbol to an [M, n, m] code: the new row is
/// bottom_left (length M, any values) followed by m ones in m new columns,
/// above which G is padded with zeros. Uses the claimed m of c, certifying it
/// when absent. Claims m.
LinearBatchCode extend_one(const LinearBatchCode& c, const Vector& bottom_left);

/// extend_one with an all-zero bottom-left block.
LinearBatchCode extend_one(const LinearBatchCode& c);

/// Composition of an outer code whose buckets all hold exactly n2 symbols
/// with an inner code on n2 symbols. Each outer bucket's n1 x n2 column block
/// is multiplied by G2; composed buckets are the images of the inner buckets,
/// ordered outer-bucket-major. Both codes need t = 1. Claims m1 * m2.
LinearBatchCode compose(const LinearBatchCode& outer, const LinearBatchCode& inner);

}  // namespace batchkit
