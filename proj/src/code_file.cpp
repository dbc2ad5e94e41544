#include "batchkit/code_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace batchkit {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
            if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
        }
        const bool comment = !line.tokens.empty() && line.tokens.front().text.front() == '#';
        if (!line.tokens.empty() && !comment) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

std::size_t to_count(const Line& line, const Token& tok, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
        throw ParseError(line.number, tok.column,
                         std::string("expected a non-negative integer for ") + what + ", got '" +
                             std::string(tok.text) + "'");
    return v;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) +
                         (column ? ", column " + std::to_string(column) : std::string()) + ": " + what),
      line_(line),
      column_(column) {}

LinearBatchCode parse_code_file(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, 0, "empty code file, expected header 'q n N M t'");

    const Line& header = lines.front();
    if (header.tokens.size() != 5)
        throw ParseError(header.number, 0,
                         "header needs 5 fields 'q n N M t', found " + std::to_string(header.tokens.size()));
    const std::size_t q = to_count(header, header.tokens[0], "q");
    const std::size_t n = to_count(header, header.tokens[1], "n");
    const std::size_t N = to_count(header, header.tokens[2], "N");
    const std::size_t M = to_count(header, header.tokens[3], "M");
    const std::size_t t = to_count(header, header.tokens[4], "t");
    if (q > PrimeField::max_modulus || !is_prime(static_cast<std::uint32_t>(q)))
        throw ParseError(header.number, header.tokens[0].column, "q=" + std::to_string(q) + " is not a supported prime");
    if (n < 1) throw ParseError(header.number, header.tokens[1].column, "n must be at least 1");
    if (N < n) throw ParseError(header.number, header.tokens[2].column, "N must be at least n");
    if (M < 1 || M > N) throw ParseError(header.number, header.tokens[3].column, "M must be in [1, N]");
    if (t < 1) throw ParseError(header.number, header.tokens[4].column, "t must be at least 1");
    const PrimeField field(static_cast<std::uint32_t>(q));

    if (lines.size() != 1 + M + n) {
        const std::size_t at = lines.size() > 1 + M + n ? lines[1 + M + n].number : lines.back().number;
        throw ParseError(at, 0,
                         "expected " + std::to_string(M) + " bucket lines and " + std::to_string(n) +
                             " matrix rows after the header, found " + std::to_string(lines.size() - 1) +
                             " lines");
    }

    std::vector<Bucket> buckets(M);
    std::vector<std::size_t> owner(N, 0);  // 1-based bucket, 0 = unassigned
    for (std::size_t b = 0; b < M; ++b) {
        const Line& line = lines[1 + b];
        for (const auto& tok : line.tokens) {
            const std::size_t col = to_count(line, tok, "bucket column");
            if (col < 1 || col > N)
                throw ParseError(line.number, tok.column,
                                 "column " + std::to_string(col) + " outside [1, " + std::to_string(N) + "]");
            if (owner[col - 1] != 0)
                throw ParseError(line.number, tok.column,
                                 "column " + std::to_string(col) + " already in bucket " +
                                     std::to_string(owner[col - 1]));
            owner[col - 1] = b + 1;
            buckets[b].push_back(col - 1);
        }
    }
    for (std::size_t c = 0; c < N; ++c)
        if (owner[c] == 0)
            throw ParseError(lines[M].number, 0,
                             "buckets do not partition the columns: column " + std::to_string(c + 1) +
                                 " is in no bucket");

    std::vector<Elem> data;
    data.reserve(n * N);
    for (std::size_t r = 0; r < n; ++r) {
        const Line& line = lines[1 + M + r];
        if (line.tokens.size() != N)
            throw ParseError(line.number, 0,
                             "matrix row " + std::to_string(r + 1) + " has " + std::to_string(line.tokens.size()) +
                                 " entries, expected " + std::to_string(N));
        for (const auto& tok : line.tokens) {
            const std::size_t v = to_count(line, tok, "matrix entry");
            if (v >= q)
                throw ParseError(line.number, tok.column,
                                 "entry " + std::to_string(v) + " outside [0, " + std::to_string(q - 1) + "]");
            data.push_back(static_cast<Elem>(v));
        }
    }
    return LinearBatchCode(Matrix(field, n, N, std::move(data)), std::move(buckets), t);
}

std::string serialize_code_file(const LinearBatchCode& code) {
    std::string out;
    out += std::to_string(code.field().q()) + ' ' + std::to_string(code.n()) + ' ' +
           std::to_string(code.length()) + ' ' + std::to_string(code.bucket_count()) + ' ' +
           std::to_string(code.budget()) + '\n';
    for (const auto& bucket : code.buckets()) {
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(bucket[i] + 1);
        }
        out += '\n';
    }
    const auto& g = code.generator();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (c) out += ' ';
            out += std::to_string(g.at(r, c));
        }
        out += '\n';
    }
    return out;
}

LinearBatchCode load_code_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open code file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_code_file(ss.str());
}

}  // namespace batchkit
