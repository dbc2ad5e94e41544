#include "batchkit/sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace batchkit {

namespace {

/// One bucket's share of the encoded database; logs every read.
class BucketServer {
public:
    void store(std::size_t column, Elem value) { contents_.emplace_back(column, value); }

    Elem read(std::size_t column) {
        for (const auto& [c, v] : contents_)
            if (c == column) {
                log_.push_back(column);
                return v;
            }
        throw std::logic_error("server asked for column " + std::to_string(column + 1) + " it does not hold");
    }

    const std::vector<std::size_t>& log() const noexcept { return log_; }

private:
    std::vector<std::pair<std::size_t, Elem>> contents_;
    std::vector<std::size_t> log_;
};

}  // namespace

SimResult simulate(const LinearBatchCode& code, const Vector& x, const BatchRequest& request) {
    Planner planner(code);
    return simulate(planner, x, request);
}

SimResult simulate(Planner& planner, const Vector& x, const BatchRequest& request) {
    const auto& code = planner.code();
    const Vector y = encode(code, x);

    std::vector<BucketServer> servers(code.bucket_count());
    for (std::size_t b = 0; b < code.bucket_count(); ++b)
        for (std::size_t c : code.buckets()[b]) servers[b].store(c, y[c]);

    SimResult result;
    auto planned = planner.plan(request);
    result.status = planned.status;
    if (!planned) return result;

    SimTranscript tr;
    tr.request = request;
    tr.reconstructed = decode(code, *planned.plan,
                              [&](std::size_t c) { return servers[code.bucket_of(c)].read(c); });
    for (const auto& rec : tr.reconstructed)
        if (rec.value != x[rec.item])
            throw std::logic_error("reconstructed x_" + std::to_string(rec.item + 1) + " is wrong");
    for (const auto& s : servers) {
        tr.per_server_queries.push_back(s.log());
        tr.per_server_load.push_back(s.log().size());
    }
    tr.wall_steps = tr.per_server_load.empty()
                        ? 0
                        : *std::max_element(tr.per_server_load.begin(), tr.per_server_load.end());
    result.transcript = std::move(tr);
    return result;
}

WorkloadGenerator::WorkloadGenerator(std::size_t n, std::size_t m, const PrimeField& field, std::uint64_t seed)
    : n_(n), m_(m), field_(field), engine_(seed) {
    if (n_ == 0) throw PreconditionError("workload needs n >= 1");
}

std::pair<BatchRequest, Vector> WorkloadGenerator::next() {
    std::vector<std::size_t> idx(m_);
    for (auto& i : idx) i = static_cast<std::size_t>(engine_() % n_);
    std::sort(idx.begin(), idx.end());
    std::vector<Elem> x(n_);
    for (auto& v : x) v = static_cast<Elem>(engine_() % field_.q());
    return {BatchRequest(std::move(idx)), Vector(field_, std::move(x))};
}

WorkloadSummary workload_stats(const LinearBatchCode& code, std::size_t m, std::size_t trials,
                               std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("workload needs at least one trial");
    WorkloadSummary summary;
    summary.seed = seed;
    summary.total_reads.assign(code.bucket_count(), 0);
    summary.load_histogram.assign(code.bucket_count(), std::vector<std::size_t>(code.budget() + 1, 0));

    Planner planner(code);
    WorkloadGenerator gen(code.n(), m, code.field(), seed);
    for (std::size_t i = 0; i < trials; ++i) {
        auto [request, x] = gen.next();
        ++summary.request_count;
        const auto res = simulate(planner, x, request);
        if (!res) continue;
        ++summary.feasible_count;
        const auto& load = res.transcript->per_server_load;
        for (std::size_t b = 0; b < load.size(); ++b) {
            summary.total_reads[b] += load[b];
            ++summary.load_histogram[b][load[b]];
            summary.max_load = std::max(summary.max_load, load[b]);
        }
    }
    return summary;
}

}  // namespace batchkit
