#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "batchkit/linalg.hpp"

namespace batchkit {

/// A plan or recovery set is inconsistent with the code it is applied to.
class PlanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Bucket = std::vector<std::size_t>;

/// Linear batch code: generator G (n x N), an ordered partition of the N
/// columns into M buckets, and a per-bucket read budget t.
///
/// The [M, n, m]_q codes are the special case of singleton buckets and t = 1.
/// All indices are 0-based.
class LinearBatchCode {
public:
    LinearBatchCode(Matrix generator, std::vector<Bucket> buckets, std::size_t t);

    /// One bucket per column, t = 1.
    static LinearBatchCode with_singleton_buckets(Matrix generator);

    const Matrix& generator() const noexcept { return g_; }
    const PrimeField& field() const noexcept { return g_.field(); }
    std::size_t n() const noexcept { return g_.rows(); }
    std::size_t length() const noexcept { return g_.cols(); }
    std::size_t bucket_count() const noexcept { return buckets_.size(); }
    std::size_t budget() const noexcept { return t_; }
    const std::vector<Bucket>& buckets() const noexcept { return buckets_; }
    std::size_t bucket_of(std::size_t column) const { return bucket_of_.at(column); }

    /// R = n / N.
    double rate() const noexcept { return static_cast<double>(n()) / static_cast<double>(length()); }

    /// Singleton buckets and t = 1.
    bool is_simple() const noexcept;

    /// The m promised by the construction that produced this code, if any.
    /// Certification may find a larger value; it never finds a smaller one.
    std::optional<std::size_t> claimed_m() const noexcept { return claimed_m_; }
    LinearBatchCode& set_claimed_m(std::optional<std::size_t> m) {
        claimed_m_ = m;
        return *this;
    }

    /// Equality of generator, buckets and budget; the claimed m is metadata.
    friend bool operator==(const LinearBatchCode& a, const LinearBatchCode& b) {
        return a.g_ == b.g_ && a.buckets_ == b.buckets_ && a.t_ == b.t_;
    }

private:
    Matrix g_;
    std::vector<Bucket> buckets_;
    std::vector<std::size_t> bucket_of_;
    std::size_t t_;
    std::optional<std::size_t> claimed_m_;
};

/// A set of columns whose combination recovers one database entry:
/// sum over k of coeffs[k] * G^[support[k]] = e_item.
class RecoverySet {
public:
    /// Throws PlanError unless the combination equals e_item for this code and
    /// every coefficient is nonzero.
    static RecoverySet checked(const LinearBatchCode& code, std::size_t item,
                               std::vector<std::size_t> support, std::vector<Elem> coeffs);

    std::size_t item() const noexcept { return item_; }
    const std::vector<std::size_t>& support() const noexcept { return support_; }
    const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

    bool recovers(const LinearBatchCode& code) const;

    friend bool operator==(const RecoverySet&, const RecoverySet&) = default;

private:
    RecoverySet(std::size_t item, std::vector<std::size_t> support, std::vector<Elem> coeffs)
        : item_(item), support_(std::move(support)), coeffs_(std::move(coeffs)) {}

    std::size_t item_;
    std::vector<std::size_t> support_;
    std::vector<Elem> coeffs_;
};

/// A multiset of database indices to retrieve at once. Keeps the caller's
/// order; canonical() sorts it.
class BatchRequest {
public:
    BatchRequest() = default;
    explicit BatchRequest(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    BatchRequest canonical() const;

    friend bool operator==(const BatchRequest&, const BatchRequest&) = default;

private:
    std::vector<std::size_t> indices_;
};

/// One recovery set per request slot; sets[r] recovers request.indices()[r].
struct QueryPlan {
    BatchRequest request;
    std::vector<RecoverySet> sets;

    /// Throws PlanError if any recovery equation, disjointness, or per-bucket
    /// budget fails against the code.
    void validate(const LinearBatchCode& code) const;

    /// Number of columns read from each bucket.
    std::vector<std::size_t> bucket_loads(const LinearBatchCode& code) const;
};

enum class PlanStatus {
    feasible,
    infeasible,
    /// No plan found, but recovery sets were truncated by a support cap so a
    /// plan may still exist.
    infeasible_under_cap,
};

struct PlanResult {
    PlanStatus status = PlanStatus::infeasible;
    std::optional<QueryPlan> plan;

    explicit operator bool() const noexcept { return status == PlanStatus::feasible; }
};

struct PlanOptions {
    /// Largest recovery-set support considered; unset means N (complete search).
    std::optional<std::size_t> max_support;
};

/// Plans batch requests against one code, caching recovery sets per item.
///
/// Search: recovery sets are the minimal supports from combinations_equal_to.
/// Backtracking picks, at every step, the requested item with the fewest
/// recovery sets still compatible with the columns and bucket budgets used so
/// far (ties go to the smaller item). Copies of the same item take sets in
/// increasing list order, so each multiset of sets is visited once. The first
/// complete assignment is returned; copies of an item are mapped to request
/// slots in slot order.
class Planner {
public:
    explicit Planner(const LinearBatchCode& code, PlanOptions options = {});

    const std::vector<RecoverySet>& recovery_sets(std::size_t item);
    PlanResult plan(const BatchRequest& request);

    const LinearBatchCode& code() const noexcept { return code_; }
    bool capped() const noexcept { return cap_ < code_.length(); }

private:
    struct Candidate {
        std::uint64_t columns;
        std::vector<std::pair<std::size_t, std::size_t>> bucket_use;  // (bucket, count)
    };
    struct ItemSets {
        std::vector<RecoverySet> sets;
        std::vector<Candidate> candidates;
    };

    const ItemSets& item_sets(std::size_t item);

    LinearBatchCode code_;
    std::size_t cap_;
    std::vector<std::optional<ItemSets>> cache_;
};

/// y = xG.
Vector encode(const LinearBatchCode& code, const Vector& x);

/// All minimal recovery sets for e_item with support size <= max_size.
std::vector<RecoverySet> enumerate_recovery_sets(const LinearBatchCode& code, std::size_t item,
                                                 std::size_t max_size);

PlanResult plan_request(const LinearBatchCode& code, const BatchRequest& request,
                        PlanOptions options = {});

struct Recovered {
    std::size_t item;
    Elem value;

    friend bool operator==(const Recovered&, const Recovered&) = default;
};

/// Reads encoded symbols through `read` (only the plan's support columns are
/// requested) and returns x at each requested slot.
std::vector<Recovered> decode(const LinearBatchCode& code, const QueryPlan& plan,
                              const std::function<Elem(std::size_t)>& read);
std::vector<Recovered> decode(const LinearBatchCode& code, const QueryPlan& plan, const Vector& y);

inline constexpr std::uint64_t default_verify_cap = 1'000'000;

struct VerifyOptions {
    /// Maximum number of canonical multisets verify_batch may check.
    std::uint64_t multiset_cap = default_verify_cap;
    PlanOptions plan;
};

enum class BatchVerdict { holds, fails, fails_under_cap };

struct VerifyResult {
    BatchVerdict verdict = BatchVerdict::holds;
    /// Lexicographically first failing canonical multiset.
    std::optional<BatchRequest> witness;
    std::uint64_t checked = 0;

    bool holds() const noexcept { return verdict == BatchVerdict::holds; }
};

/// C(n + m - 1, m), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::size_t n, std::size_t m) noexcept;

/// Checks every non-decreasing m-multiset over [n] for a plan. Throws
/// GuardError if the number of multisets exceeds options.multiset_cap.
VerifyResult verify_batch(const LinearBatchCode& code, std::size_t m, const VerifyOptions& options = {});
VerifyResult verify_batch(Planner& planner, std::size_t m, const VerifyOptions& options = {});

/// Upper bound on any certifiable m: m copies of x_j need m disjoint sets,
/// each holding a column nonzero in row j, and a bucket contributes at most t
/// of them. Minimum over rows of sum_b min(t, nnz(row j in bucket b)).
std::size_t batch_ceiling(const LinearBatchCode& code);

/// Largest m for which verify_batch holds (0 if even m = 1 fails).
std::size_t certify_max_m(const LinearBatchCode& code, const VerifyOptions& options = {});

}  // namespace batchkit
