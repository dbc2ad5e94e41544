#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "batchkit/batch_code.hpp"

namespace batchkit {

/// Record of one batch retrieval against in-process bucket servers.
struct SimTranscript {
    BatchRequest request;
    /// Column indices read from each server, in the order they were issued.
    std::vector<std::vector<std::size_t>> per_server_queries;
    std::vector<std::size_t> per_server_load;
    std::vector<Recovered> reconstructed;
    /// Rounds needed when each server answers one read per round.
    std::size_t wall_steps = 0;

    friend bool operator==(const SimTranscript&, const SimTranscript&) = default;
};

struct SimResult {
    PlanStatus status = PlanStatus::infeasible;
    std::optional<SimTranscript> transcript;

    explicit operator bool() const noexcept { return status == PlanStatus::feasible; }
};

/// Encodes x, hands each bucket to its own server, plans the request, reads
/// exactly the planned columns and decodes. Throws std::logic_error if the
/// reconstruction disagrees with x.
SimResult simulate(const LinearBatchCode& code, const Vector& x, const BatchRequest& request);
SimResult simulate(Planner& planner, const Vector& x, const BatchRequest& request);

/// Seeded source of (request, database) pairs for workload runs.
///
/// Engine: std::mt19937_64 seeded with `seed`. Each draw takes m indices as
/// engine() % n, sorted ascending, followed by n database symbols as
/// engine() % q.
class WorkloadGenerator {
public:
    WorkloadGenerator(std::size_t n, std::size_t m, const PrimeField& field, std::uint64_t seed);

    std::pair<BatchRequest, Vector> next();

private:
    std::size_t n_, m_;
    PrimeField field_;
    std::mt19937_64 engine_;
};

struct WorkloadSummary {
    std::size_t request_count = 0;
    std::size_t feasible_count = 0;
    std::size_t max_load = 0;
    /// Total reads served by each server across feasible requests.
    std::vector<std::size_t> total_reads;
    /// load_histogram[b][k]: feasible requests in which server b served k reads.
    std::vector<std::vector<std::size_t>> load_histogram;
    std::uint64_t seed = 0;

    friend bool operator==(const WorkloadSummary&, const WorkloadSummary&) = default;
};

WorkloadSummary workload_stats(const LinearBatchCode& code, std::size_t m, std::size_t trials,
                               std::uint64_t seed);

}  // namespace batchkit
