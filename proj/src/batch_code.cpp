#include "batchkit/batch_code.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace batchkit {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

LinearBatchCode::LinearBatchCode(Matrix generator, std::vector<Bucket> buckets, std::size_t t)
    : g_(std::move(generator)), buckets_(std::move(buckets)), t_(t) {
    if (t_ < 1) throw PreconditionError("bucket budget t must be at least 1");
    if (g_.rows() > g_.cols())
        throw PreconditionError("code needs n <= N, got n=" + std::to_string(g_.rows()) +
                                " N=" + std::to_string(g_.cols()));
    if (buckets_.empty()) throw PreconditionError("code needs at least one bucket");
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    bucket_of_.assign(g_.cols(), unassigned);
    for (std::size_t b = 0; b < buckets_.size(); ++b) {
        if (buckets_[b].empty()) throw PreconditionError("bucket " + idx(b) + " is empty");
        for (std::size_t c : buckets_[b]) {
            if (c >= g_.cols())
                throw PreconditionError("bucket " + idx(b) + " names column " + idx(c) +
                                        " beyond N=" + std::to_string(g_.cols()));
            if (bucket_of_[c] != unassigned)
                throw PreconditionError("column " + idx(c) + " appears in buckets " +
                                        idx(bucket_of_[c]) + " and " + idx(b));
            bucket_of_[c] = b;
        }
    }
    for (std::size_t c = 0; c < g_.cols(); ++c)
        if (bucket_of_[c] == unassigned)
            throw PreconditionError("column " + idx(c) + " belongs to no bucket");
}

LinearBatchCode LinearBatchCode::with_singleton_buckets(Matrix generator) {
    std::vector<Bucket> buckets(generator.cols());
    for (std::size_t c = 0; c < buckets.size(); ++c) buckets[c] = {c};
    return LinearBatchCode(std::move(generator), std::move(buckets), 1);
}

bool LinearBatchCode::is_simple() const noexcept {
    return t_ == 1 && buckets_.size() == g_.cols();
}

RecoverySet RecoverySet::checked(const LinearBatchCode& code, std::size_t item,
                                 std::vector<std::size_t> support, std::vector<Elem> coeffs) {
    RecoverySet rs(item, std::move(support), std::move(coeffs));
    if (!rs.recovers(code))
        throw PlanError("columns do not combine to e_" + idx(item));
    return rs;
}

bool RecoverySet::recovers(const LinearBatchCode& code) const {
    const auto& g = code.generator();
    const auto& f = code.field();
    if (item_ >= code.n() || support_.empty() || support_.size() != coeffs_.size()) return false;
    if (!std::is_sorted(support_.begin(), support_.end()) ||
        std::adjacent_find(support_.begin(), support_.end()) != support_.end())
        return false;
    if (support_.back() >= code.length()) return false;
    for (Elem a : coeffs_)
        if (a == 0 || !f.contains(a)) return false;
    for (std::size_t r = 0; r < code.n(); ++r) {
        Elem acc = 0;
        for (std::size_t k = 0; k < support_.size(); ++k)
            acc = f.add(acc, f.mul(coeffs_[k], g.at(r, support_[k])));
        if (acc != (r == item_ ? 1u : 0u)) return false;
    }
    return true;
}

BatchRequest BatchRequest::canonical() const {
    auto sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    return BatchRequest(std::move(sorted));
}

std::vector<std::size_t> QueryPlan::bucket_loads(const LinearBatchCode& code) const {
    std::vector<std::size_t> load(code.bucket_count(), 0);
    for (const auto& s : sets)
        for (std::size_t c : s.support()) ++load[code.bucket_of(c)];
    return load;
}

void QueryPlan::validate(const LinearBatchCode& code) const {
    if (sets.size() != request.size())
        throw PlanError("plan has " + std::to_string(sets.size()) + " sets for a request of size " +
                        std::to_string(request.size()));
    std::vector<bool> used(code.length(), false);
    for (std::size_t r = 0; r < sets.size(); ++r) {
        const auto& s = sets[r];
        if (s.item() != request.indices()[r])
            throw PlanError("slot " + idx(r) + " recovers item " + idx(s.item()) + ", request wants " +
                            idx(request.indices()[r]));
        if (!s.recovers(code)) throw PlanError("slot " + idx(r) + " does not recover its item");
        for (std::size_t c : s.support()) {
            if (used[c]) throw PlanError("column " + idx(c) + " used by two recovery sets");
            used[c] = true;
        }
    }
    const auto load = bucket_loads(code);
    for (std::size_t b = 0; b < load.size(); ++b)
        if (load[b] > code.budget())
            throw PlanError("bucket " + idx(b) + " read " + std::to_string(load[b]) +
                            " times, budget " + std::to_string(code.budget()));
}

// ---------------------------------------------------------------------------
// Planner

Planner::Planner(const LinearBatchCode& code, PlanOptions options)
    : code_(code), cap_(options.max_support.value_or(code.length())), cache_(code.n()) {
    if (code_.length() > 64) throw GuardError("planner supports at most 64 encoded symbols");
    cap_ = std::min(cap_, code_.length());
}

const Planner::ItemSets& Planner::item_sets(std::size_t item) {
    if (item >= code_.n())
        throw PreconditionError("request index " + idx(item) + " outside [1, " +
                                std::to_string(code_.n()) + "]");
    auto& slot = cache_[item];
    if (!slot) {
        ItemSets is;
        is.sets = enumerate_recovery_sets(code_, item, cap_);
        for (const auto& rs : is.sets) {
            Candidate cand{0, {}};
            for (std::size_t c : rs.support()) {
                cand.columns |= std::uint64_t{1} << c;
                const std::size_t b = code_.bucket_of(c);
                auto it = std::find_if(cand.bucket_use.begin(), cand.bucket_use.end(),
                                       [b](const auto& p) { return p.first == b; });
                if (it == cand.bucket_use.end())
                    cand.bucket_use.emplace_back(b, 1);
                else
                    ++it->second;
            }
            is.candidates.push_back(std::move(cand));
        }
        slot = std::move(is);
    }
    return *slot;
}

const std::vector<RecoverySet>& Planner::recovery_sets(std::size_t item) { return item_sets(item).sets; }

PlanResult Planner::plan(const BatchRequest& request) {
    PlanResult result;
    if (request.empty()) {
        result.status = PlanStatus::feasible;
        result.plan = QueryPlan{request, {}};
        return result;
    }

    // Demand per distinct item, items ascending.
    auto sorted = request.canonical().indices();
    std::vector<std::size_t> items, demand;
    for (std::size_t i : sorted) {
        if (items.empty() || items.back() != i) {
            items.push_back(i);
            demand.push_back(0);
        }
        ++demand.back();
    }
    std::vector<const ItemSets*> sets;
    for (std::size_t i : items) sets.push_back(&item_sets(i));

    const std::size_t k = items.size();
    const std::size_t t = code_.budget();
    std::vector<std::size_t> remaining = demand, next(k, 0);
    std::vector<std::vector<std::size_t>> chosen(k);
    std::vector<std::size_t> load(code_.bucket_count(), 0);
    std::uint64_t used = 0;

    auto compatible = [&](const Candidate& c) {
        if (c.columns & used) return false;
        for (const auto& [b, cnt] : c.bucket_use)
            if (load[b] + cnt > t) return false;
        return true;
    };
    auto apply = [&](const Candidate& c, int sign) {
        used ^= c.columns;
        for (const auto& [b, cnt] : c.bucket_use) {
            if (sign > 0)
                load[b] += cnt;
            else
                load[b] -= cnt;
        }
    };

    std::function<bool()> search = [&]() -> bool {
        // Most-constrained item first.
        std::size_t pick = k, best = static_cast<std::size_t>(-1);
        for (std::size_t j = 0; j < k; ++j) {
            if (remaining[j] == 0) continue;
            std::size_t count = 0;
            const auto& cands = sets[j]->candidates;
            for (std::size_t c = next[j]; c < cands.size(); ++c)
                if (compatible(cands[c])) ++count;
            if (count < remaining[j]) return false;
            if (count < best) {
                best = count;
                pick = j;
            }
        }
        if (pick == k) return true;

        const auto& cands = sets[pick]->candidates;
        const std::size_t saved_next = next[pick];
        for (std::size_t c = saved_next; c < cands.size(); ++c) {
            if (!compatible(cands[c])) continue;
            apply(cands[c], +1);
            chosen[pick].push_back(c);
            --remaining[pick];
            next[pick] = c + 1;
            if (search()) return true;
            ++remaining[pick];
            chosen[pick].pop_back();
            apply(cands[c], -1);
        }
        next[pick] = saved_next;
        return false;
    };

    if (!search()) {
        result.status = capped() ? PlanStatus::infeasible_under_cap : PlanStatus::infeasible;
        return result;
    }

    QueryPlan plan{request, {}};
    std::vector<std::size_t> taken(k, 0);
    for (std::size_t i : request.indices()) {
        const auto j = static_cast<std::size_t>(std::lower_bound(items.begin(), items.end(), i) - items.begin());
        plan.sets.push_back(sets[j]->sets[chosen[j][taken[j]++]]);
    }
    result.status = PlanStatus::feasible;
    result.plan = std::move(plan);
    return result;
}

// ---------------------------------------------------------------------------

Vector encode(const LinearBatchCode& code, const Vector& x) { return mat_vec_encode(code.generator(), x); }

std::vector<RecoverySet> enumerate_recovery_sets(const LinearBatchCode& code, std::size_t item,
                                                 std::size_t max_size) {
    if (item >= code.n()) throw PreconditionError("item " + idx(item) + " outside the database");
    max_size = std::min(max_size, code.length());
    const auto target = Vector::unit(code.field(), code.n(), item);
    std::vector<RecoverySet> out;
    for (auto& comb : combinations_equal_to(code.generator(), target, max_size))
        out.push_back(RecoverySet::checked(code, item, std::move(comb.support), std::move(comb.coeffs)));
    return out;
}

PlanResult plan_request(const LinearBatchCode& code, const BatchRequest& request, PlanOptions options) {
    Planner planner(code, options);
    return planner.plan(request);
}

std::vector<Recovered> decode(const LinearBatchCode& code, const QueryPlan& plan,
                              const std::function<Elem(std::size_t)>& read) {
    plan.validate(code);
    const auto& f = code.field();
    std::vector<Recovered> out;
    out.reserve(plan.sets.size());
    for (const auto& s : plan.sets) {
        Elem acc = 0;
        for (std::size_t k = 0; k < s.support().size(); ++k) {
            const Elem y = read(s.support()[k]);
            acc = f.add(acc, f.mul(s.coeffs()[k], y));
        }
        out.push_back({s.item(), acc});
    }
    return out;
}

std::vector<Recovered> decode(const LinearBatchCode& code, const QueryPlan& plan, const Vector& y) {
    if (y.size() != code.length())
        throw DimensionError("encoded vector length " + std::to_string(y.size()) + " != N=" +
                             std::to_string(code.length()));
    if (y.field() != code.field()) throw DimensionError("encoded vector field differs from code field");
    return decode(code, plan, [&y](std::size_t c) { return y[c]; });
}

std::uint64_t multiset_count(std::size_t n, std::size_t m) noexcept {
    // C(n+m-1, m) built incrementally: C(n-1+i, i) = C(n-2+i, i-1) * (n-1+i) / i.
    if (n == 0) return m == 0 ? 1 : 0;
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        c = c * (n - 1 + i) / i;
        if (c > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(c);
}

VerifyResult verify_batch(const LinearBatchCode& code, std::size_t m, const VerifyOptions& options) {
    Planner planner(code, options.plan);
    return verify_batch(planner, m, options);
}

VerifyResult verify_batch(Planner& planner, std::size_t m, const VerifyOptions& options) {
    if (m < 1) throw PreconditionError("verify_batch needs m >= 1");
    const std::size_t n = planner.code().n();
    const std::uint64_t total = multiset_count(n, m);
    if (total > options.multiset_cap)
        throw GuardError("verify_batch would check " + std::to_string(total) +
                         " multisets, above the cap of " + std::to_string(options.multiset_cap) +
                         "; raise the cap explicitly to proceed");

    VerifyResult result;
    std::vector<std::size_t> req(m, 0);
    for (;;) {
        ++result.checked;
        const BatchRequest request(req);
        if (!planner.plan(request)) {
            result.verdict = planner.capped() ? BatchVerdict::fails_under_cap : BatchVerdict::fails;
            result.witness = request;
            return result;
        }
        // Next non-decreasing sequence.
        std::size_t pos = m;
        while (pos > 0 && req[pos - 1] == n - 1) --pos;
        if (pos == 0) break;
        const std::size_t v = req[pos - 1] + 1;
        for (std::size_t j = pos - 1; j < m; ++j) req[j] = v;
    }
    return result;
}

std::size_t batch_ceiling(const LinearBatchCode& code) {
    const auto& g = code.generator();
    std::size_t ceiling = static_cast<std::size_t>(-1);
    for (std::size_t r = 0; r < code.n(); ++r) {
        std::size_t row_cap = 0;
        for (const auto& bucket : code.buckets()) {
            std::size_t nnz = 0;
            for (std::size_t c : bucket)
                if (g.at(r, c) != 0) ++nnz;
            row_cap += std::min(nnz, code.budget());
        }
        ceiling = std::min(ceiling, row_cap);
    }
    return ceiling;
}

std::size_t certify_max_m(const LinearBatchCode& code, const VerifyOptions& options) {
    // verify_batch is monotone in m (drop a slot from any plan), so the first
    // failure going up determines the maximum.
    const std::size_t ceiling = batch_ceiling(code);
    Planner planner(code, options.plan);
    std::size_t best = 0;
    for (std::size_t m = 1; m <= ceiling; ++m) {
        if (!verify_batch(planner, m, options).holds()) break;
        best = m;
    }
    return best;
}

}  // namespace batchkit
