#include "bppc/experiment.hpp"

#include "bppc/oracle.hpp"
#include "bppc/rng.hpp"
#include "bppc/solver_bn.hpp"
#include "bppc/solver_classic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bppc {

std::string to_string(Algorithm alg)
{
    switch (alg) {
    case Algorithm::bn: return "bn";
    case Algorithm::m: return "m";
    case Algorithm::exact: return "exact";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& text)
{
    if (text == "bn") return Algorithm::bn;
    if (text == "m") return Algorithm::m;
    if (text == "exact") return Algorithm::exact;
    throw std::invalid_argument("unknown algorithm '" + text + "'");
}

bool ExperimentConfig::runs(Algorithm alg) const
{
    return std::find(algorithms.begin(), algorithms.end(), alg) != algorithms.end();
}

void ExperimentConfig::validate() const
{
    if (n_values.empty()) throw std::invalid_argument("config: n list is empty");
    if (capacities.empty()) throw std::invalid_argument("config: B list is empty");
    if (densities.empty()) throw std::invalid_argument("config: density list is empty");
    if (algorithms.empty()) throw std::invalid_argument("config: algorithm list is empty");
    if (count < 1) throw std::invalid_argument("config: count must be >= 1");
    for (int n : n_values)
        if (n < 2) throw std::invalid_argument("config: every n must be >= 2");
    for (Weight b : capacities)
        if (b < 1) throw std::invalid_argument("config: every B must be >= 1");
    for (double d : densities)
        if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("config: densities must lie in [0,1]");
    const Weight max_weight = kind == ClassKind::ts ? 2500 : 100;
    for (Weight b : capacities)
        if (b < max_weight)
            throw std::invalid_argument("config: B = " + std::to_string(b) + " is below the largest possible weight " +
                                        std::to_string(max_weight));
    if (runs(Algorithm::exact))
        for (int n : n_values)
            if (n > OracleLimit::hard_cap)
                throw std::invalid_argument("config: exact algorithm needs n <= " +
                                            std::to_string(OracleLimit::hard_cap));
    for (const auto& group : groups)
        for (Weight b : group)
            if (std::find(capacities.begin(), capacities.end(), b) == capacities.end())
                throw std::invalid_argument("config: group capacity " + std::to_string(b) + " is not in the B list");
}

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key)
{
    std::istringstream ss(text);
    T value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) throw std::invalid_argument("config: bad value '" + text + "' for " + key);
    return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& key)
{
    std::vector<T> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_number<T>(item, key));
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig config;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });

        if (key == "class") config.kind = parse_class_kind(value);
        else if (key == "n") config.n_values = parse_list<int>(value, key);
        else if (key == "b" || key == "capacity") config.capacities = parse_list<Weight>(value, key);
        else if (key == "density") config.densities = parse_list<double>(value, key);
        else if (key == "count") config.count = parse_number<int>(value, key);
        else if (key == "seed") config.seed = parse_number<std::uint64_t>(value, key);
        else if (key == "threads") config.threads = parse_number<int>(value, key);
        else if (key == "output") config.output = value;
        else if (key == "algorithms") {
            config.algorithms.clear();
            for (const auto& a : split(value, ',')) config.algorithms.push_back(parse_algorithm(a));
        } else if (key == "groups") {
            config.groups.clear();
            for (const auto& g : split(value, ';')) config.groups.push_back(parse_list<Weight>(g, key));
        } else {
            throw std::invalid_argument("config line " + std::to_string(number) + ": unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    return parse_config(in);
}

std::uint64_t cell_seed(std::uint64_t master, int n, double density)
{
    const auto permille = static_cast<std::uint64_t>(std::llround(density * 1000.0));
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(n)), permille);
}

MetricsRow summarize(std::span<const InstanceRecord> records)
{
    MetricsRow row;
    row.count = static_cast<int>(records.size());
    if (records.empty()) return row;
    row.n = records.front().n;
    row.capacity = std::to_string(records.front().capacity);
    row.density = records.front().density;
    row.has_m = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.m.has_value(); });
    row.has_bn = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.bn.has_value(); });

    const double c = static_cast<double>(records.size());
    auto timing = [&](auto member) {
        TimingStats t{std::numeric_limits<double>::max(), 0.0, 0.0};
        for (const auto& r : records) {
            const double e = (r.*member)->elapsed;
            t.min = std::min(t.min, e);
            t.max = std::max(t.max, e);
            t.avg += e / c;
        }
        return t;
    };
    int m_eq = 0, bn_eq = 0, m_lt = 0, bn_lt = 0;
    double gap_m = 0.0, gap_bn = 0.0;
    for (const auto& r : records) {
        if (row.has_m) {
            m_eq += r.m->value == r.lower_bound;
            gap_m += gap(r.m->value, r.lower_bound);
        }
        if (row.has_bn) {
            bn_eq += r.bn->value == r.lower_bound;
            gap_bn += gap(r.bn->value, r.lower_bound);
        }
        if (row.has_m && row.has_bn) {
            m_lt += r.m->value < r.bn->value;
            bn_lt += r.bn->value < r.m->value;
        }
    }
    row.m_eq_lb_pct = 100.0 * m_eq / c;
    row.bn_eq_lb_pct = 100.0 * bn_eq / c;
    row.m_lt_bn_pct = 100.0 * m_lt / c;
    row.bn_lt_m_pct = 100.0 * bn_lt / c;
    row.gap_m = 100.0 * gap_m / c;
    row.gap_bn = 100.0 * gap_bn / c;
    if (row.has_m) row.t_m = timing(&InstanceRecord::m);
    if (row.has_bn) row.t_bn = timing(&InstanceRecord::bn);
    return row;
}

namespace {

struct Job {
    const GeneratedInstance* generated;
    Weight capacity;
};

InstanceRecord solve_job(const ExperimentConfig& config, const Job& job, double density)
{
    const Instance instance = job.generated->instance.with_capacity(job.capacity);
    InstanceRecord rec;
    rec.n = instance.size();
    rec.capacity = job.capacity;
    rec.density = density;
    rec.index = job.generated->index;
    rec.graph_seed = job.generated->graph_seed;
    rec.weight_seed = job.generated->weight_seed;
    rec.measured_density = job.generated->density;
    rec.lower_bound = lb_bppc(instance);

    auto check = [&](const Packing& packing, Algorithm alg) {
        const Verdict verdict = verify_packing(instance, packing);
        if (!verdict.ok())
            throw ExperimentError(to_string(alg) + " produced an invalid packing (" + verdict.describe() +
                                  ") on instance graph_seed=" + std::to_string(rec.graph_seed) +
                                  " weight_seed=" + std::to_string(rec.weight_seed) + " B=" +
                                  std::to_string(rec.capacity));
    };
    if (config.runs(Algorithm::bn)) {
        const auto result = solve_bn(instance);
        check(result.packing, Algorithm::bn);
        rec.bn = AlgorithmOutcome{result.report.value, result.report.elapsed};
    }
    if (config.runs(Algorithm::m)) {
        const auto result = best_of_m(instance);
        check(result.packing, Algorithm::m);
        rec.m = AlgorithmOutcome{result.report.value, result.report.elapsed};
    }
    if (config.runs(Algorithm::exact)) {
        const auto result = exact_min_bins(instance, {OracleLimit::hard_cap});
        check(result.packing, Algorithm::exact);
        rec.exact = AlgorithmOutcome{result.value, result.report.elapsed};
    }
    return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, bool parallel)
{
    config.validate();
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif
    const Weight max_capacity = *std::max_element(config.capacities.begin(), config.capacities.end());

    ExperimentResult result;
    for (int n : config.n_values) {
        std::vector<InstanceRecord> n_records;
        for (double density : config.densities) {
            auto spec = ClassSpec::make(config.kind, n, max_capacity, density, config.count,
                                        cell_seed(config.seed, n, density));
            const auto generated = build_class(spec);

            std::vector<Job> jobs;
            for (Weight b : config.capacities)
                for (const auto& g : generated) jobs.push_back({&g, b});

            std::vector<InstanceRecord> records(jobs.size());
            std::vector<std::string> errors(jobs.size());
            const int total = static_cast<int>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
            for (int k = 0; k < total; ++k) {
                try {
                    records[k] = solve_job(config, jobs[k], density);
                } catch (const std::exception& e) {
                    errors[k] = e.what();
                }
            }
            for (const auto& e : errors)
                if (!e.empty()) throw ExperimentError(e);

            for (std::size_t b = 0; b < config.capacities.size(); ++b) {
                const std::span<const InstanceRecord> cell(records.data() + b * generated.size(), generated.size());
                result.rows.push_back(summarize(cell));
            }
            n_records.insert(n_records.end(), records.begin(), records.end());
        }
        for (const auto& group : config.groups) {
            std::vector<InstanceRecord> subset;
            for (const auto& r : n_records)
                if (std::find(group.begin(), group.end(), r.capacity) != group.end()) subset.push_back(r);
            MetricsRow row = summarize(subset);
            row.n = n;
            row.density = std::numeric_limits<double>::quiet_NaN();
            std::ostringstream label;
            for (std::size_t k = 0; k < group.size(); ++k) label << (k ? "|" : "") << group[k];
            row.capacity = label.str();
            result.summary.push_back(row);
        }
        result.records.insert(result.records.end(), n_records.begin(), n_records.end());
    }
    return result;
}

double round_half_up(double value, int digits)
{
    const double scale = std::pow(10.0, digits);
    return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

namespace {

std::string fixed(double value, int digits)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << round_half_up(value, digits);
    return os.str();
}

std::string density_text(double d)
{
    if (std::isnan(d)) return "all";
    std::ostringstream os;
    os << d;
    return os.str();
}

}  // namespace

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows)
{
    out << "n,B,density,m_eq_lb_pct,bn_eq_lb_pct,m_lt_bn_pct,bn_lt_m_pct,gap_m,gap_bn,"
           "t_min_m,t_max_m,t_avg_m,t_min_bn,t_max_bn,t_avg_bn\n";
    for (const auto& r : rows) {
        const bool both = r.has_m && r.has_bn;
        auto pct = [](bool present, double v) { return present ? fixed(v, 2) : std::string("NA"); };
        auto time = [](bool present, double v) { return present ? fixed(v, 4) : std::string("NA"); };
        out << r.n << ',' << r.capacity << ',' << density_text(r.density) << ',' << pct(r.has_m, r.m_eq_lb_pct)
            << ',' << pct(r.has_bn, r.bn_eq_lb_pct) << ',' << pct(both, r.m_lt_bn_pct) << ','
            << pct(both, r.bn_lt_m_pct) << ',' << pct(r.has_m, r.gap_m) << ',' << pct(r.has_bn, r.gap_bn) << ','
            << time(r.has_m, r.t_m.min) << ',' << time(r.has_m, r.t_m.max) << ',' << time(r.has_m, r.t_m.avg) << ','
            << time(r.has_bn, r.t_bn.min) << ',' << time(r.has_bn, r.t_bn.max) << ','
            << time(r.has_bn, r.t_bn.avg) << '\n';
    }
}

void write_instance_log(std::ostream& out, std::span<const InstanceRecord> records)
{
    out << "n,B,density,index,graph_seed,weight_seed,measured_density,lb,bn,t_bn,m,t_m,exact,t_exact\n";
    auto outcome = [&](const std::optional<AlgorithmOutcome>& o) {
        if (o) out << ',' << o->value << ',' << fixed(o->elapsed, 4);
        else out << ",NA,NA";
    };
    for (const auto& r : records) {
        out << r.n << ',' << r.capacity << ',' << density_text(r.density) << ',' << r.index << ',' << r.graph_seed
            << ',' << r.weight_seed << ',' << fixed(r.measured_density, 6) << ',' << r.lower_bound;
        outcome(r.bn);
        outcome(r.m);
        outcome(r.exact);
        out << '\n';
    }
}

}  // namespace bppc
