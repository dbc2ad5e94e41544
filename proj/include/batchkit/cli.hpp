#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "batchkit/batch_code.hpp"
#include "batchkit/sim.hpp"

namespace batchkit::cli {

enum class OutputFormat { text, machine };

/// Process exit statuses: verdict positive, verdict negative, usage or input error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;

/// Runs one command line (args[0] is the program name).
///
/// Subcommands: verify, plan, encode, distance, bounds, certify, construct,
/// simulate. Machine output is one `key=value` record per line with a fixed
/// field order per record type.
int main_impl(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Builds a code from a construction expression such as
/// `compose(subcube(4,1),subcube(2,1))`, `concat(a.code,b.code)`,
/// `dsum(a.code,b.code)` or `extend(a.code,010)`. Bare operands are code
/// file paths; subcube codes are built over `field`.
LinearBatchCode evaluate_construction(std::string_view expr, const PrimeField& field);

std::string render_transcript(const SimTranscript& tr, const LinearBatchCode& code, OutputFormat format);

/// Locale-independent fixed-point rendering.
std::string format_real(double v, int precision = 9);

}  // namespace batchkit::cli
