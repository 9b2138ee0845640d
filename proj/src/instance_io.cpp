#include "bppc/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

namespace bppc {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-blank line split into integer tokens; throws at EOF.
    std::vector<std::int64_t> integers(const char* expecting)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            return parse(line);
        }
        throw ParseError(number_ + 1, std::string("unexpected end of file, expecting ") + expecting);
    }

    std::string raw(const char* expecting)
    {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError(number_ + 1, std::string("expecting ") + expecting);
        ++number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    bool at_end()
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++number_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
        }
        return true;
    }

    int line() const { return number_; }

private:
    std::vector<std::int64_t> parse(const std::string& line) const
    {
        std::vector<std::int64_t> out;
        std::istringstream ss(line);
        std::string token;
        while (ss >> token) {
            std::int64_t value = 0;
            const auto* first = token.data();
            const auto* last = token.data() + token.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last) throw ParseError(number_, "non-integer token '" + token + "'");
            out.push_back(value);
        }
        return out;
    }

    std::istream& in_;
    int number_ = 0;
};

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

void write_instance(const Instance& instance, std::ostream& out)
{
    const int n = instance.size();
    out << "BPPC 1\n";
    out << n << ' ' << instance.graph().edge_count() << ' ' << instance.capacity() << ' '
        << (instance.has_model() ? 1 : 0) << '\n';
    for (int i = 0; i < n; ++i) {
        out << i << ' ' << instance.weight(i);
        if (instance.has_model()) out << ' ' << (*instance.model())[i].l << ' ' << (*instance.model())[i].r;
        out << '\n';
    }
    for (auto [u, v] : instance.graph().edges()) out << u << ' ' << v << '\n';
}

void write_instance(const Instance& instance, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_instance(instance, out);
}

Instance read_instance(std::istream& in)
{
    LineReader reader(in);
    {
        std::string magic = reader.raw("header 'BPPC 1'");
        while (!magic.empty() && magic.back() == ' ') magic.pop_back();
        if (magic != "BPPC 1") throw ParseError(reader.line(), "bad magic, expected 'BPPC 1'");
    }
    const auto header = reader.integers("'n m B has_model'");
    if (header.size() != 4) throw ParseError(reader.line(), "header must have 4 fields: n m B has_model");
    const auto n = header[0], m = header[1], B = header[2], has_model = header[3];
    if (n < 0 || m < 0 || B < 0 || (has_model != 0 && has_model != 1))
        throw ParseError(reader.line(), "invalid header values");

    std::vector<Weight> weights(n);
    std::vector<Interval> intervals;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto row = reader.integers("item line");
        const std::size_t want = has_model ? 4 : 2;
        if (row.size() != want) throw ParseError(reader.line(), "item line must have " + std::to_string(want) + " fields");
        if (row[0] != i) throw ParseError(reader.line(), "item id " + std::to_string(row[0]) + " out of order");
        if (row[1] < 0) throw ParseError(reader.line(), "negative weight");
        if (row[1] > B) throw ParseError(reader.line(), "weight " + std::to_string(row[1]) + " exceeds capacity");
        weights[i] = row[1];
        if (has_model) {
            if (row[2] >= row[3]) throw ParseError(reader.line(), "interval needs l < r");
            intervals.push_back({static_cast<int>(i), row[2], row[3]});
        }
    }

    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (std::int64_t k = 0; k < m; ++k) {
        const auto row = reader.integers("edge line");
        if (row.size() != 2) throw ParseError(reader.line(), "edge line must have 2 fields");
        const auto u = row[0], v = row[1];
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(reader.line(), "edge endpoint out of range");
        if (u == v) throw ParseError(reader.line(), "self-loop");
        if (u > v) throw ParseError(reader.line(), "edge must be listed as u < v");
        if (!seen.emplace(u, v).second) throw ParseError(reader.line(), "duplicate edge");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (!reader.at_end()) throw ParseError(reader.line(), "trailing content after declared edges");

    try {
        auto graph = ConflictGraph::from_edges(static_cast<int>(n), edges);
        std::optional<IntervalModel> model;
        if (has_model) model = IntervalModel(std::move(intervals));
        return Instance(std::move(weights), B, std::move(graph), std::move(model));
    } catch (const std::invalid_argument& e) {
        throw ParseError(reader.line(), e.what());
    }
}

Instance read_instance(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_instance(in);
}

Instance read_literature_instance(std::istream& in)
{
    LineReader reader(in);
    const auto header = reader.integers("'n B'");
    if (header.size() != 2) throw ParseError(reader.line(), "header must have 2 fields: n B");
    const auto n = header[0], B = header[1];
    if (n < 0 || B < 0) throw ParseError(reader.line(), "invalid header values");

    std::vector<Weight> weights(n, -1);
    std::set<std::pair<int, int>> pairs;
    for (std::int64_t k = 0; k < n; ++k) {
        const auto row = reader.integers("item line");
        if (row.size() < 2) throw ParseError(reader.line(), "item line needs index and weight");
        const auto i = row[0];
        if (i < 1 || i > n) throw ParseError(reader.line(), "item index " + std::to_string(i) + " out of range");
        if (weights[i - 1] >= 0) throw ParseError(reader.line(), "item " + std::to_string(i) + " listed twice");
        if (row[1] < 0 || row[1] > B) throw ParseError(reader.line(), "weight out of range [0, B]");
        weights[i - 1] = row[1];
        for (std::size_t t = 2; t < row.size(); ++t) {
            const auto j = row[t];
            if (j < 1 || j > n) throw ParseError(reader.line(), "conflict index " + std::to_string(j) + " out of range");
            if (j == i) throw ParseError(reader.line(), "item conflicts with itself");
            pairs.emplace(static_cast<int>(std::min(i, j) - 1), static_cast<int>(std::max(i, j) - 1));
        }
    }
    std::vector<std::pair<int, int>> edges(pairs.begin(), pairs.end());
    return Instance(std::move(weights), B, ConflictGraph::from_edges(static_cast<int>(n), edges));
}

Instance read_literature_instance(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_literature_instance(in);
}

}  // namespace bppc
