#include "batchkit/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "batchkit/bounds.hpp"
#include "batchkit/code_file.hpp"
#include "batchkit/constructions.hpp"

namespace batchkit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string join_1based(const std::vector<std::size_t>& v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i] + 1);
    }
    return s;
}

template <class T>
std::string join_plain(const std::vector<T>& v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<std::size_t> parse_numbers(std::string_view list, const char* what) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        std::size_t end = list.find(',', pos);
        if (end == std::string_view::npos) end = list.size();
        std::string_view tok = list.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw UsageError(std::string("bad ") + what + " list '" + std::string(list) + "'");
        out.push_back(v);
        if (end == list.size()) break;
        pos = end + 1;
    }
    return out;
}

/// Comma-separated 1-based indices, canonicalized to non-decreasing order.
BatchRequest parse_request(std::string_view list, std::size_t n) {
    auto idx = parse_numbers(list, "request");
    for (auto& i : idx) {
        if (i < 1 || i > n)
            throw UsageError("request index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
        --i;
    }
    return BatchRequest(std::move(idx)).canonical();
}

Vector parse_vector(std::string_view list, const PrimeField& f, std::size_t length, const char* what) {
    auto vals = parse_numbers(list, what);
    if (vals.size() != length)
        throw UsageError(std::string(what) + " needs " + std::to_string(length) + " entries, got " +
                         std::to_string(vals.size()));
    std::vector<Elem> e;
    for (auto v : vals) {
        if (v >= f.q())
            throw UsageError(std::string(what) + " entry " + std::to_string(v) + " outside [0, " +
                             std::to_string(f.q() - 1) + "]");
        e.push_back(static_cast<Elem>(v));
    }
    return Vector(f, std::move(e));
}

std::uint64_t verify_cap(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("BATCHKIT_VERIFY_CAP")) {
        std::uint64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
            throw UsageError("BATCHKIT_VERIFY_CAP must be a positive integer, got '" + std::string(s) + "'");
        return v;
    }
    return default_verify_cap;
}

std::string verdict_name(PlanStatus s) {
    switch (s) {
        case PlanStatus::feasible: return "feasible";
        case PlanStatus::infeasible: return "infeasible";
        case PlanStatus::infeasible_under_cap: return "infeasible-under-cap";
    }
    return "unknown";
}

std::string verdict_name(BatchVerdict v) {
    switch (v) {
        case BatchVerdict::holds: return "holds";
        case BatchVerdict::fails: return "fails";
        case BatchVerdict::fails_under_cap: return "fails-under-cap";
    }
    return "unknown";
}

std::string combination_text(const RecoverySet& s) {
    std::string t;
    for (std::size_t k = 0; k < s.support().size(); ++k) {
        if (k) t += " + ";
        if (s.coeffs()[k] != 1) t += std::to_string(s.coeffs()[k]) + "*";
        t += "y_" + std::to_string(s.support()[k] + 1);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Construction expressions

class ConstructionParser {
public:
    ConstructionParser(std::string_view s, const PrimeField& field) : s_(s), field_(field) {}

    LinearBatchCode parse() {
        auto code = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing text");
        return code;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw UsageError("construction '" + std::string(s_) + "' at offset " + std::to_string(pos_ + 1) + ": " +
                         what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    std::string atom() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')' && s_[pos_] != '(') ++pos_;
        std::string a(s_.substr(start, pos_ - start));
        while (!a.empty() && std::isspace(static_cast<unsigned char>(a.back()))) a.pop_back();
        if (a.empty()) fail("expected an operand");
        return a;
    }

    std::size_t count() {
        const std::string a = atom();
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
        if (ec != std::errc() || ptr != a.data() + a.size()) fail("expected an integer, got '" + a + "'");
        return v;
    }

    LinearBatchCode expr() {
        const std::string head = atom();
        if (!peek('(')) {
            try {
                return load_code_file(head);
            } catch (const ParseError& e) {
                // Name the file here; the top-level handler only knows --code.
                throw std::runtime_error(head + ": " + e.what());
            }
        }
        ++pos_;
        if (head == "subcube") {
            const std::size_t n = count();
            expect(',');
            const std::size_t t = count();
            expect(')');
            return subcube_code(n, t, field_);
        }
        if (head == "concat" || head == "dsum" || head == "compose") {
            auto a = expr();
            expect(',');
            auto b = expr();
            expect(')');
            if (head == "concat") return concat_codes(a, b);
            if (head == "dsum") return direct_sum(a, b);
            return compose(a, b);
        }
        if (head == "extend") {
            auto a = expr();
            if (peek(')')) {
                ++pos_;
                return extend_one(a);
            }
            expect(',');
            const std::string digits = atom();
            expect(')');
            std::vector<Elem> bl;
            for (char ch : digits) {
                if (!std::isdigit(static_cast<unsigned char>(ch)) || static_cast<Elem>(ch - '0') >= a.field().q())
                    fail("bottom-left block must be digits in [0, q-1], got '" + digits + "'");
                bl.push_back(static_cast<Elem>(ch - '0'));
            }
            return extend_one(a, Vector(a.field(), std::move(bl)));
        }
        fail("unknown construction '" + head + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    PrimeField field_;
};

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
    std::string format = "text";
    std::string code_path;
    std::size_t m = 0;
    std::optional<std::uint64_t> cap;
    std::optional<std::size_t> max_support;
    std::string request;
    std::string x;
    std::size_t bM = 0, bn = 0, bm = 0;
    std::string expr;
    std::uint32_t q = 2;
    std::string out_path;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 1;
};

PlanOptions plan_options(const Options& o) { return PlanOptions{o.max_support}; }

int cmd_verify(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    VerifyOptions vo{verify_cap(o.cap), plan_options(o)};
    const auto r = verify_batch(code, o.m, vo);
    const std::string verdict = verdict_name(r.verdict);
    if (fmt == OutputFormat::machine) {
        out << "command=verify m=" << o.m << " verdict=" << verdict << " checked=" << r.checked;
        if (r.witness) out << " witness=" << join_1based(r.witness->indices());
        out << '\n';
    } else if (r.holds()) {
        out << "holds: every " << o.m << "-request is served (" << r.checked << " canonical multisets checked)\n";
    } else {
        out << verdict << ": request " << join_1based(r.witness->indices()) << " cannot be served\n";
    }
    return r.holds() ? exit_ok : exit_negative;
}

int cmd_plan(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    const auto req = parse_request(o.request, code.n());
    const auto r = plan_request(code, req, plan_options(o));
    const std::string verdict = verdict_name(r.status);
    if (fmt == OutputFormat::machine) {
        out << "command=plan verdict=" << verdict << " request=" << join_1based(req.indices());
        if (r) {
            const auto loads = r.plan->bucket_loads(code);
            out << " loads=" << join_plain(loads);
        }
        out << '\n';
        if (r)
            for (std::size_t i = 0; i < r.plan->sets.size(); ++i) {
                const auto& s = r.plan->sets[i];
                out << "slot=" << i + 1 << " item=" << s.item() + 1 << " support=" << join_1based(s.support())
                    << " coeffs=" << join_plain(s.coeffs()) << '\n';
            }
    } else {
        out << verdict << " request " << join_1based(req.indices()) << '\n';
        if (r) {
            for (const auto& s : r.plan->sets)
                out << "  x_" << s.item() + 1 << " = " << combination_text(s) << '\n';
            out << "  bucket loads: " << join_plain(r.plan->bucket_loads(code), ' ') << " (budget "
                << code.budget() << ")\n";
        }
    }
    return r ? exit_ok : exit_negative;
}

int cmd_encode(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    const auto x = parse_vector(o.x, code.field(), code.n(), "x");
    const auto y = encode(code, x);
    std::vector<Elem> yv(y.entries().begin(), y.entries().end());
    if (fmt == OutputFormat::machine) {
        out << "command=encode y=" << join_plain(yv) << '\n';
        for (std::size_t b = 0; b < code.bucket_count(); ++b) {
            std::vector<Elem> vals;
            for (std::size_t c : code.buckets()[b]) vals.push_back(y[c]);
            out << "bucket=" << b + 1 << " columns=" << join_1based(code.buckets()[b]) << " values=" << join_plain(vals)
                << '\n';
        }
    } else {
        out << "y = " << join_plain(yv, ' ') << '\n';
        for (std::size_t b = 0; b < code.bucket_count(); ++b) {
            std::vector<Elem> vals;
            for (std::size_t c : code.buckets()[b]) vals.push_back(y[c]);
            out << "  bucket " << b + 1 << ": " << join_plain(vals, ' ') << '\n';
        }
    }
    return exit_ok;
}

int cmd_distance(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    const auto d = min_distance(code.generator());
    if (fmt == OutputFormat::machine)
        out << "command=distance min_distance=" << d << " n=" << code.n() << " N=" << code.length() << '\n';
    else
        out << "[" << code.length() << ", " << code.n() << ", " << d << "]_" << code.field().q()
            << " linear code: minimum distance " << d << '\n';
    return exit_ok;
}

int cmd_bounds(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto r = check_bounds(o.bM, o.bn, o.bm);
    const bool ok = r.finite_satisfied();
    if (fmt == OutputFormat::machine) {
        out << "command=bounds M=" << r.M << " n=" << r.n << " m=" << r.m
            << " verdict=" << (ok ? "satisfied" : "violated") << '\n';
        for (const auto& b : r.finite)
            out << "bound=" << b.name << " outcome=" << to_string(b.outcome) << " capacity=" << b.capacity.str()
                << " demand=" << b.demand.str() << " slack=" << b.slack().str() << '\n';
        for (const auto& b : r.asymptotic) {
            out << "bound=" << b.name << " outcome=" << to_string(b.outcome) << " rate=" << format_real(b.rate);
            if (b.cap) out << " cap=" << format_real(*b.cap) << " slack=" << format_real(*b.slack());
            out << '\n';
        }
    } else {
        out << "binary [M, n, m] = [" << r.M << ", " << r.n << ", " << r.m << "]\n";
        for (const auto& b : r.finite)
            out << "  " << b.name << ": " << to_string(b.outcome) << " (" << b.capacity.str() << " >= "
                << b.demand.str() << ", slack " << b.slack().str() << ")\n";
        for (const auto& b : r.asymptotic) {
            out << "  " << b.name << ": " << to_string(b.outcome);
            if (b.cap)
                out << " (rate " << format_real(b.rate, 6) << " <= cap " << format_real(*b.cap, 6) << ", slack "
                    << format_real(*b.slack(), 6) << ")";
            out << '\n';
        }
    }
    return ok ? exit_ok : exit_negative;
}

int cmd_certify(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    VerifyOptions vo{verify_cap(o.cap), plan_options(o)};
    const auto m = certify_max_m(code, vo);
    const auto ceiling = batch_ceiling(code);
    std::optional<std::size_t> by_bounds;
    if (code.field().is_binary() && code.is_simple()) by_bounds = max_m_by_finite_bounds(code.length(), code.n());
    if (fmt == OutputFormat::machine) {
        out << "command=certify max_m=" << m << " ceiling=" << ceiling << " n=" << code.n() << " N=" << code.length()
            << " M=" << code.bucket_count() << " t=" << code.budget() << " rate=" << format_real(code.rate());
        if (by_bounds) out << " finite_bound_max_m=" << *by_bounds;
        out << '\n';
    } else {
        out << "certified m = " << m << " (n=" << code.n() << ", N=" << code.length() << ", M=" << code.bucket_count()
            << ", t=" << code.budget() << ", rate " << format_real(code.rate(), 6) << ")\n";
        out << "  search ceiling " << ceiling << '\n';
        if (by_bounds) out << "  finite ECC bounds allow m <= " << *by_bounds << '\n';
    }
    return exit_ok;
}

int cmd_construct(const Options& o, std::ostream& out) {
    const auto code = evaluate_construction(o.expr, PrimeField(o.q));
    const auto text = serialize_code_file(code);
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + o.out_path + "'");
        f << text;
    }
    return exit_ok;
}

int cmd_simulate(const Options& o, OutputFormat fmt, std::ostream& out) {
    const auto code = load_code_file(o.code_path);
    if (o.trials) {
        if (o.m < 1) throw UsageError("workload mode needs --m >= 1");
        const auto s = workload_stats(code, o.m, *o.trials, o.seed);
        const bool all = s.feasible_count == s.request_count;
        if (fmt == OutputFormat::machine) {
            out << "command=simulate mode=workload m=" << o.m << " trials=" << s.request_count << " seed=" << s.seed
                << " feasible=" << s.feasible_count << " max_load=" << s.max_load << '\n';
            for (std::size_t b = 0; b < s.total_reads.size(); ++b)
                out << "server=" << b + 1 << " total_reads=" << s.total_reads[b]
                    << " histogram=" << join_plain(s.load_histogram[b]) << '\n';
        } else {
            out << s.feasible_count << " of " << s.request_count << " random " << o.m
                << "-requests served (seed " << s.seed << "), max server load " << s.max_load << '\n';
            for (std::size_t b = 0; b < s.total_reads.size(); ++b)
                out << "  server " << b + 1 << ": " << s.total_reads[b] << " reads, loads 0.." << code.budget()
                    << " seen " << join_plain(s.load_histogram[b], ' ') << " times\n";
        }
        return all ? exit_ok : exit_negative;
    }
    if (o.request.empty() || o.x.empty()) throw UsageError("simulate needs --request and --x, or --trials");
    const auto req = parse_request(o.request, code.n());
    const auto x = parse_vector(o.x, code.field(), code.n(), "x");
    const auto r = simulate(code, x, req);
    if (!r) {
        if (fmt == OutputFormat::machine)
            out << "command=simulate verdict=" << verdict_name(r.status) << " request=" << join_1based(req.indices())
                << '\n';
        else
            out << verdict_name(r.status) << " request " << join_1based(req.indices()) << '\n';
        return exit_negative;
    }
    out << render_transcript(*r.transcript, code, fmt);
    return exit_ok;
}

}  // namespace

std::string format_real(double v, int precision) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

LinearBatchCode evaluate_construction(std::string_view expr, const PrimeField& field) {
    return ConstructionParser(expr, field).parse();
}

std::string render_transcript(const SimTranscript& tr, const LinearBatchCode& code, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::machine) {
        out << "command=simulate verdict=feasible request=" << join_1based(tr.request.indices())
            << " wall_steps=" << tr.wall_steps << '\n';
        for (std::size_t b = 0; b < tr.per_server_queries.size(); ++b)
            out << "server=" << b + 1 << " load=" << tr.per_server_load[b]
                << " reads=" << join_1based(tr.per_server_queries[b]) << '\n';
        for (std::size_t i = 0; i < tr.reconstructed.size(); ++i)
            out << "slot=" << i + 1 << " item=" << tr.reconstructed[i].item + 1
                << " value=" << tr.reconstructed[i].value << '\n';
    } else {
        out << "served request " << join_1based(tr.request.indices()) << " in " << tr.wall_steps
            << " round(s), budget " << code.budget() << " per server\n";
        for (std::size_t b = 0; b < tr.per_server_queries.size(); ++b) {
            out << "  server " << b + 1 << ": " << tr.per_server_load[b] << " read(s)";
            for (std::size_t c : tr.per_server_queries[b]) out << " y_" << c + 1;
            out << '\n';
        }
        out << "  reconstructed:";
        for (const auto& r : tr.reconstructed) out << " x_" << r.item + 1 << "=" << r.value;
        out << '\n';
    }
    return out.str();
}

int main_impl(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear batch code toolkit", "batchkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

    auto add_code = [&](CLI::App* sub) { sub->add_option("--code", o.code_path, "Code file")->required(); };
    auto add_support = [&](CLI::App* sub) {
        sub->add_option("--max-support", o.max_support,
                        "Largest recovery set considered (default N; a cap can give false infeasible verdicts)");
    };

    auto* verify = app.add_subcommand("verify", "Check that every m-request can be served");
    add_code(verify);
    verify->add_option("--m", o.m, "Batch size")->required()->check(CLI::PositiveNumber);
    verify->add_option("--cap", o.cap, "Maximum number of multisets to check (env BATCHKIT_VERIFY_CAP)");
    add_support(verify);

    auto* plan = app.add_subcommand("plan", "Find disjoint recovery sets for one request");
    add_code(plan);
    plan->add_option("--request", o.request, "Comma-separated 1-based indices")->required();
    add_support(plan);

    auto* enc = app.add_subcommand("encode", "Encode a database vector");
    add_code(enc);
    enc->add_option("--x", o.x, "Comma-separated database symbols")->required();

    auto* dist = app.add_subcommand("distance", "Minimum distance of the code generated by G");
    add_code(dist);

    auto* bnd = app.add_subcommand("bounds", "Evaluate ECC bounds on a binary [M, n, m] triple");
    bnd->add_option("--M", o.bM, "Code length")->required()->check(CLI::PositiveNumber);
    bnd->add_option("--n", o.bn, "Database size")->required()->check(CLI::PositiveNumber);
    bnd->add_option("--m", o.bm, "Batch size")->required()->check(CLI::PositiveNumber);

    auto* cert = app.add_subcommand("certify", "Largest m for which the code is a batch code");
    add_code(cert);
    cert->add_option("--cap", o.cap, "Maximum number of multisets per verification (env BATCHKIT_VERIFY_CAP)");
    add_support(cert);

    auto* cons = app.add_subcommand("construct", "Build a code from an expression and print it as a code file");
    cons->add_option("--expr", o.expr, "e.g. compose(subcube(4,1),subcube(2,1))")->required();
    cons->add_option("--q", o.q, "Field for subcube(...) terms");
    cons->add_option("--out", o.out_path, "Write the code file here instead of stdout");

    auto* sim = app.add_subcommand("simulate", "Serve a request from simulated bucket servers");
    add_code(sim);
    sim->add_option("--request", o.request, "Comma-separated 1-based indices");
    sim->add_option("--x", o.x, "Comma-separated database symbols");
    sim->add_option("--trials", o.trials, "Run a seeded random workload instead")->check(CLI::PositiveNumber);
    sim->add_option("--m", o.m, "Request size for workload mode");
    sim->add_option("--seed", o.seed, "Workload seed");

    std::vector<std::string> argv_store(args.begin(), args.end());
    if (argv_store.empty()) argv_store.emplace_back("batchkit");
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    const auto fmt = o.format == "machine" ? OutputFormat::machine : OutputFormat::text;
    try {
        if (verify->parsed()) return cmd_verify(o, fmt, out);
        if (plan->parsed()) return cmd_plan(o, fmt, out);
        if (enc->parsed()) return cmd_encode(o, fmt, out);
        if (dist->parsed()) return cmd_distance(o, fmt, out);
        if (bnd->parsed()) return cmd_bounds(o, fmt, out);
        if (cert->parsed()) return cmd_certify(o, fmt, out);
        if (cons->parsed()) return cmd_construct(o, out);
        if (sim->parsed()) return cmd_simulate(o, fmt, out);
    } catch (const ParseError& e) {
        err << "error: " << o.code_path << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    err << app.help();
    return exit_usage;
}

}  // namespace batchkit::cli
