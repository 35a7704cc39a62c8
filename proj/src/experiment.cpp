#include "gibbsgraph/experiment.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gibbsgraph/branching.hpp"
#include "gibbsgraph/clusters.hpp"
#include "gibbsgraph/domination.hpp"
#include "gibbsgraph/ground_state.hpp"
#include "gibbsgraph/io.hpp"
#include "gibbsgraph/point_process.hpp"
#include "gibbsgraph/sampler.hpp"

namespace gibbsgraph {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source_name) {
    KeyValueConfig config;
    config.source_ = source_name;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") !=
                               std::string::npos)
            throw ConfigError(where + ": bad key '" + key + "' (want snake_case)");
        if (value.empty()) throw ConfigError(where + ": empty value for key '" + key + "'");
        if (!config.values_.emplace(key, value).second)
            throw ConfigError(where + ": duplicate key '" + key + "'");
    }
    return config;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::istringstream in(read_text_file(path));
    return parse(in, path);
}

bool KeyValueConfig::has(const std::string& key) const {
    if (values_.count(key)) {
        used_.insert(key);
        return true;
    }
    return false;
}

const std::string& KeyValueConfig::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(source_ + ": missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const { return raw(key); }

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const std::string& s = raw(key);
    double value = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(source_ + ": key '" + key + "' is not a number: '" + s + "'");
    return value;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_long(const std::string& key) const {
    const std::string& s = raw(key);
    long value = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(source_ + ": key '" + key + "' is not an integer: '" + s + "'");
    return value;
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) const {
    const std::string& s = raw(key);
    std::uint64_t value = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(source_ + ": key '" + key + "' is not an unsigned integer: '" + s + "'");
    return value;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    if (s == "true" || s == "1" || s == "on") return true;
    if (s == "false" || s == "0" || s == "off") return false;
    throw ConfigError(source_ + ": key '" + key + "' is not a boolean: '" + s + "'");
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
    const std::string& s = raw(key);
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find(',', start);
        if (pos == std::string::npos) pos = s.size();
        const std::string field = trim(s.substr(start, pos - start));
        double v = 0.0;
        const char* end = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (field.empty() || ec != std::errc{} || ptr != end)
            throw ConfigError(source_ + ": key '" + key + "' has a bad list entry: '" + field +
                              "'");
        values.push_back(v);
        start = pos + 1;
    }
    return values;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void KeyValueConfig::reject_unused() const {
    std::string unknown;
    for (const auto& [key, value] : values_)
        if (!used_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    if (!unknown.empty())
        throw ConfigError(source_ + ": unknown key(s) for this command: " + unknown);
}

std::string KeyValueConfig::canonical() const {
    std::string out;
    for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
    return out;
}

std::string version_string() { return "gibbsgraph 0.1.0"; }

namespace {

// ---------- shared config helpers ----------

std::uint64_t required_seed(const KeyValueConfig& config) {
    if (!config.has("seed"))
        throw ConfigError(config.source() +
                          ": missing 'seed' (randomized commands require an explicit seed; pass "
                          "it in the config or with --seed)");
    return config.get_u64("seed");
}

ModelParams model_params(const KeyValueConfig& config, int dim, bool require_beta = true) {
    const bool has_beta = config.has("beta");
    const bool has_temp = config.has("temperature");
    if (has_beta && has_temp)
        throw ConfigError(config.source() + ": give exactly one of 'beta' and 'temperature'");
    double beta = 1.0; // commands whose result is beta-free accept the default
    if (has_beta) {
        beta = config.get_double("beta");
    } else if (has_temp) {
        const double t = config.get_double("temperature");
        if (!(t > 0.0)) throw ConfigError(config.source() + ": 'temperature' must be > 0");
        beta = 1.0 / t;
    } else if (require_beta) {
        throw ConfigError(config.source() + ": one of 'beta' or 'temperature' is required");
    }
    try {
        return ModelParams(beta, config.get_double("h0"), config.get_double("h1"), dim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(config.source() + ": " + e.what());
    }
}

BoxRegion box_region(const KeyValueConfig& config) {
    const int dim = static_cast<int>(config.get_long("dim", 2));
    try {
        if (config.has("box_side")) {
            if (config.has("box_low") || config.has("box_high"))
                throw ConfigError(config.source() +
                                  ": give either 'box_side' or 'box_low'/'box_high', not both");
            return BoxRegion::cube(dim, config.get_double("box_side"));
        }
        if (!config.has("box_low") || !config.has("box_high"))
            throw ConfigError(config.source() +
                              ": box geometry needs 'box_side' or both 'box_low' and 'box_high'");
        BoxRegion box(config.get_double_list("box_low"), config.get_double_list("box_high"));
        if (box.dim() != dim)
            throw ConfigError(config.source() + ": box corners disagree with 'dim'");
        return box;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(config.source() + ": " + e.what());
    }
}

struct CutoffChoice {
    bool use_default = true;
    std::optional<double> value;

    std::optional<double> resolve(const PointSet& points, const ModelParams& params) const {
        if (value) return value;
        if (use_default) return default_cutoff(points, params);
        return std::nullopt;
    }
};

CutoffChoice cutoff_choice(const KeyValueConfig& config) {
    CutoffChoice choice;
    const std::string raw = config.get_string("cutoff", "auto");
    if (raw == "auto") return choice;
    choice.use_default = false;
    if (raw == "none") return choice;
    double v = 0.0;
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(raw.data(), end, v);
    if (ec != std::errc{} || ptr != end || !(v > 0.0))
        throw ConfigError(config.source() + ": 'cutoff' must be 'auto', 'none' or a number > 0");
    choice.value = v;
    return choice;
}

PointSet load_points(const KeyValueConfig& config) {
    return read_points_file(config.get_string("points"));
}

/// Provenance comment embedded in every output file: tool version, command,
/// and a fingerprint of the effective configuration (output path excluded so
/// the same run written elsewhere stays byte-identical).
std::string manifest_line(const std::string& command, const KeyValueConfig& config) {
    std::istringstream lines(config.canonical());
    std::string filtered = "command=" + command + "\n";
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("output=", 0) != 0 && line.rfind("trace_output=", 0) != 0)
            filtered += line + "\n";
    std::string out = version_string() + " command=" + command +
                      " config=" + hex16(fnv1a64(filtered));
    if (config.has("seed")) out += " seed=" + config.get_string("seed");
    return out;
}

std::string output_path(const KeyValueConfig& config) {
    if (!config.has("output"))
        throw ConfigError(config.source() +
                          ": missing 'output' (pass it in the config or with --output)");
    return config.get_string("output");
}

std::string bool01(bool b) { return b ? "1" : "0"; }

// ---------- commands ----------

void cmd_sample_points(KeyValueConfig& config, std::ostream& out) {
    const std::string process = config.get_string("process", "poisson");
    const double intensity = config.get_double("intensity");
    if (!(intensity >= 0.0)) throw ConfigError(config.source() + ": 'intensity' must be >= 0");
    const BoxRegion box = box_region(config);
    const std::uint64_t seed = required_seed(config);
    const std::string path = output_path(config);

    PointSet points(box.dim(), {});
    if (process == "poisson") {
        points = sample_poisson(box, intensity, seed);
    } else if (process == "hardcore") {
        const double eps0 = config.get_double("eps0");
        if (!(eps0 > 0.0)) throw ConfigError(config.source() + ": 'eps0' must be > 0");
        points = sample_hardcore(box, intensity, eps0, seed);
    } else {
        throw ConfigError(config.source() + ": 'process' must be 'poisson' or 'hardcore'");
    }
    config.reject_unused();

    std::ostringstream file;
    write_points(file, points, {manifest_line("sample-points", config)});
    write_text_file(path, file.str());
    out << "sample-points: wrote " << path << " (" << points.size() << " points, dim "
        << box.dim() << ")\n";
}

void cmd_sample_gibbs(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim());
    const long burnin = config.get_long("burnin", 1000);
    const long sweeps = config.get_long("sweeps", 0);
    if (burnin < 0 || sweeps < 0)
        throw ConfigError(config.source() + ": 'burnin' and 'sweeps' must be >= 0");
    const CutoffChoice cutoff = cutoff_choice(config);
    const std::uint64_t seed = required_seed(config);
    const std::string path = output_path(config);
    config.reject_unused();

    HeatBathChain chain(points, params, seed, cutoff.resolve(points, params));
    chain.run(static_cast<int>(burnin + sweeps));
    const double e = energy(points, chain.config(), params);

    std::ostringstream file;
    std::vector<std::string> comments{manifest_line("sample-gibbs", config)};
    comments.push_back("n_vertices=" + std::to_string(points.size()) +
                       " sweeps=" + std::to_string(burnin + sweeps) + " energy=" +
                       format_double(e) +
                       " cutoff=" + (chain.cutoff() ? format_double(*chain.cutoff()) : "none"));
    write_configuration(file, chain.config(), comments);
    write_text_file(path, file.str());
    out << "sample-gibbs: wrote " << path << " (" << chain.config().open_count()
        << " open edges, energy " << format_double(e) << ")\n";
}

void cmd_energy(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim(), /*require_beta=*/false);
    const Configuration graph =
        read_configuration_file(config.get_string("edges"), points.size());
    const std::string path = output_path(config);
    config.reject_unused();

    const double e = energy(points, graph, params);
    const double mean_degree = points.size() ? 2.0 * graph.open_count() / points.size() : 0.0;

    std::ostringstream file;
    file << "energy,n_points,n_open,mean_degree\n";
    file << "# " << manifest_line("energy", config) << '\n';
    file << format_double(e) << ',' << points.size() << ',' << graph.open_count() << ','
         << format_double(mean_degree) << '\n';
    write_text_file(path, file.str());
    out << "energy: wrote " << path << " (energy " << format_double(e) << ")\n";
}

const char* uniqueness_name(Uniqueness u) {
    switch (u) {
    case Uniqueness::unique: return "unique";
    case Uniqueness::tied: return "tied";
    default: return "unknown";
    }
}

void cmd_ground_state(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim(), /*require_beta=*/false);
    const std::string method = config.get_string("method", "auto");
    const std::string path = output_path(config);
    config.reject_unused();

    GroundStateResult result;
    std::string method_used;
    if (method == "bruteforce" ||
        (method == "auto" && edge_count(points.size()) <= ExactDistribution::kMaxEdges)) {
        result = ground_state_bruteforce(points, params);
        method_used = "bruteforce";
    } else if (method == "matching" || method == "auto") {
        method_used = "matching";
        try {
            result = ground_state_matching(points, params, /*determine_uniqueness=*/true);
        } catch (const std::invalid_argument&) {
            // uniqueness enumeration refused (a cluster is too large); the
            // minimizer itself is still exact
            result = ground_state_matching(points, params, /*determine_uniqueness=*/false);
        }
    } else {
        throw ConfigError(config.source() +
                          ": 'method' must be 'auto', 'matching' or 'bruteforce'");
    }

    std::ostringstream file;
    std::vector<std::string> comments{manifest_line("ground-state", config)};
    comments.push_back("n_vertices=" + std::to_string(points.size()) + " method=" + method_used +
                       " energy=" + format_double(result.energy) +
                       " uniqueness=" + uniqueness_name(result.uniqueness) +
                       " tie_count=" + std::to_string(result.tie_count) +
                       " degenerate_boundary=" + bool01(result.degenerate_boundary));
    write_configuration(file, result.config, comments);
    write_text_file(path, file.str());
    out << "ground-state: wrote " << path << " (energy " << format_double(result.energy) << ", "
        << uniqueness_name(result.uniqueness) << ")\n";
}

void cmd_region_scan(KeyValueConfig& config, std::ostream& out) {
    const double h0 = config.get_double("h0");
    if (!(h0 > 0.0)) throw ConfigError(config.source() + ": 'h0' must be > 0");
    const double lambda_min = config.get_double("lambda_min");
    const double lambda_max = config.get_double("lambda_max");
    const long lambda_steps = config.get_long("lambda_steps");
    const double t_min = config.get_double("temperature_min");
    const double t_max = config.get_double("temperature_max");
    const long t_steps = config.get_long("temperature_steps");
    if (!(lambda_min >= 0.0) || lambda_max < lambda_min || lambda_steps < 1)
        throw ConfigError(config.source() + ": bad lambda grid");
    if (!(t_min > 0.0) || t_max < t_min || t_steps < 1)
        throw ConfigError(config.source() + ": bad temperature grid");
    const std::string path = output_path(config);
    config.reject_unused();

    const auto grid_value = [](double lo, double hi, long steps, long k) {
        return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
    };

    std::ostringstream file;
    file << "lambda,temperature,j_tail,total_g,in_region_f,subcritical_rcm\n";
    file << "# " << manifest_line("region-scan", config) << '\n';
    long inside = 0;
    for (long a = 0; a < lambda_steps; ++a) {
        const double lambda = grid_value(lambda_min, lambda_max, lambda_steps, a);
        for (long b = 0; b < t_steps; ++b) {
            const double t = grid_value(t_min, t_max, t_steps, b);
            const bool f = in_region_f(lambda, t, h0);
            inside += f;
            file << format_double(lambda) << ',' << format_double(t) << ','
                 << format_double(j_tail_integral(t)) << ','
                 << format_double(total_g_integral(t, h0)) << ',' << bool01(f) << ','
                 << bool01(subcritical_rcm(lambda, t, h0)) << '\n';
        }
    }
    write_text_file(path, file.str());
    out << "region-scan: wrote " << path << " (" << lambda_steps * t_steps << " grid points, "
        << inside << " in the dilute region)\n";
}

void cmd_domination_check(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim());
    const std::string mode_key = config.get_string("mode", "auto");
    const std::size_t m = edge_count(points.size());
    constexpr std::size_t kExhaustiveCap = 16;
    std::string mode = mode_key;
    if (mode == "auto") mode = m <= kExhaustiveCap ? "exhaustive" : "sampled";
    if (mode != "exhaustive" && mode != "sampled")
        throw ConfigError(config.source() + ": 'mode' must be 'auto', 'exhaustive' or 'sampled'");
    if (mode == "exhaustive" && m > kExhaustiveCap)
        throw ConfigError(config.source() + ": exhaustive mode needs C(n,2) <= " +
                          std::to_string(kExhaustiveCap) + ", got " + std::to_string(m));

    long samples = 0;
    std::uint64_t seed = 0;
    if (mode == "sampled") {
        samples = config.get_long("samples", 1000);
        if (samples < 1) throw ConfigError(config.source() + ": 'samples' must be >= 1");
        seed = required_seed(config);
    }
    const std::string path = output_path(config);
    config.reject_unused();

    const int n = points.size();
    std::vector<EdgeId> edges;
    for (std::size_t k = 0; k < m; ++k) edges.push_back(index_to_edge(n, k));

    // for each pair e: nu's open probability g(L) must dominate the graph
    // conditional whatever the rest of the configuration does
    std::ostringstream file;
    file << "i,j,length,nu_probability,max_conditional,ok\n";
    file << "# " << manifest_line("domination-check", config) << '\n';
    long violations = 0;
    long long checked = 0;
    SplitMix64 rng(seed);
    for (std::size_t k = 0; k < m; ++k) {
        const EdgeId& e = edges[k];
        const double nu = nu_open_probability(points, e, params);
        double max_conditional = 0.0;
        if (mode == "exhaustive") {
            // Gray-walk all configurations of the other pairs
            std::vector<EdgeId> others;
            for (std::size_t k2 = 0; k2 < m; ++k2)
                if (k2 != k) others.push_back(edges[k2]);
            Configuration rest(n);
            max_conditional = conditional_open_probability(points, rest, e, params);
            ++checked;
            const std::size_t total = std::size_t(1) << others.size();
            for (std::size_t i = 1; i < total; ++i) {
                const int b = std::countr_zero(i);
                rest.flip(others[b]);
                max_conditional = std::max(
                    max_conditional, conditional_open_probability(points, rest, e, params));
                ++checked;
            }
        } else {
            for (long s = 0; s < samples; ++s) {
                Configuration rest(n);
                for (std::size_t k2 = 0; k2 < m; ++k2) {
                    if (k2 == k) continue;
                    if (rng.uniform() < 0.5) rest.set_open(edges[k2], true);
                }
                max_conditional = std::max(
                    max_conditional, conditional_open_probability(points, rest, e, params));
                ++checked;
            }
        }
        const bool ok = max_conditional <= nu + 1e-12;
        violations += !ok;
        file << e.i << ',' << e.j << ',' << format_double(points.edge_length(e)) << ','
             << format_double(nu) << ',' << format_double(max_conditional) << ',' << bool01(ok)
             << '\n';
    }
    file << "# mode=" << mode << " checked=" << checked << " violations=" << violations << '\n';
    write_text_file(path, file.str());
    out << "domination-check: wrote " << path << " (" << m << " pairs, " << violations
        << " violations)\n";
}

void cmd_percolation(KeyValueConfig& config, std::ostream& out) {
    const ModelParams params =
        model_params(config, static_cast<int>(config.get_long("dim", 2)));
    PercolationOptions options;
    const std::string process = config.get_string("process", "poisson");
    if (process == "hardcore") {
        options.hardcore = true;
        options.eps0 = config.get_double("eps0");
    } else if (process != "poisson") {
        throw ConfigError(config.source() + ": 'process' must be 'poisson' or 'hardcore'");
    }
    options.intensity = config.get_double("intensity");
    if (!(options.intensity >= 0.0))
        throw ConfigError(config.source() + ": 'intensity' must be >= 0");
    const std::vector<double> sides = config.get_double_list("sides");
    for (double s : sides)
        if (!(s > 0.0)) throw ConfigError(config.source() + ": 'sides' must all be > 0");
    const long replicas = config.get_long("replicas");
    if (replicas < 1) throw ConfigError(config.source() + ": 'replicas' must be >= 1");
    options.burnin = static_cast<int>(config.get_long("burnin", 1000));
    options.sweeps = static_cast<int>(config.get_long("sweeps", 0));
    if (options.burnin < 0 || options.sweeps < 0)
        throw ConfigError(config.source() + ": 'burnin' and 'sweeps' must be >= 0");
    options.margin_factor = config.get_double("margin_factor", 0.05);
    if (!(options.margin_factor >= 0.0) || !(options.margin_factor < 0.5))
        throw ConfigError(config.source() + ": 'margin_factor' must be in [0, 0.5)");
    const CutoffChoice cutoff = cutoff_choice(config);
    options.use_default_cutoff = cutoff.use_default;
    options.cutoff = cutoff.value;
    const std::uint64_t seed = required_seed(config);
    const std::string path = output_path(config);
    config.reject_unused();

    const auto rows =
        percolation_experiment(sides, static_cast<int>(replicas), params, options, seed);

    std::ostringstream file;
    file << "size,replica,seed,n_points,crossing,largest_fraction,mean_degree,energy\n";
    file << "# " << manifest_line("percolation", config) << '\n';
    long crossings = 0;
    for (const auto& row : rows) {
        crossings += row.crossing;
        file << format_double(row.side) << ',' << row.replica << ',' << row.seed << ','
             << row.n_points << ',' << bool01(row.crossing) << ','
             << format_double(row.largest_fraction) << ',' << format_double(row.mean_degree)
             << ',' << format_double(row.energy) << '\n';
    }
    write_text_file(path, file.str());
    out << "percolation: wrote " << path << " (" << rows.size() << " rows, " << crossings
        << " crossing)\n";
}

void cmd_branching(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim());
    const long runs = config.get_long("runs");
    if (runs < 1) throw ConfigError(config.source() + ": 'runs' must be >= 1");
    ExtinctionOptions options;
    options.start_vertex = static_cast<int>(config.get_long("start", 0));
    options.burnin = static_cast<int>(config.get_long("burnin", 1000));
    if (options.burnin < 0) throw ConfigError(config.source() + ": 'burnin' must be >= 0");
    options.caps.max_generations = config.get_long("max_generations", 10000);
    options.caps.max_edges = config.get_long("max_edges", 1000000);
    if (options.caps.max_generations < 1 || options.caps.max_edges < 1)
        throw ConfigError(config.source() + ": exploration caps must be >= 1");
    const CutoffChoice cutoff = cutoff_choice(config);
    options.use_default_cutoff = cutoff.use_default;
    options.cutoff = cutoff.value;
    const std::uint64_t seed = required_seed(config);
    const std::string path = output_path(config);
    std::optional<std::string> trace_path;
    long trace_run = 0;
    if (config.has("trace_output")) {
        trace_path = config.get_string("trace_output");
        trace_run = config.get_long("trace_run", 0);
        if (trace_run < 0 || trace_run >= runs)
            throw ConfigError(config.source() + ": 'trace_run' out of range");
    }
    config.reject_unused();

    if (options.start_vertex < 0 || options.start_vertex >= points.size())
        throw ConfigError(config.source() + ": 'start' out of range for " +
                          std::to_string(points.size()) + " points");

    ExtinctionResult result;
    try {
        result = extinction_experiment(points, params, static_cast<int>(runs), seed, options);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(config.source() + ": " + e.what());
    }

    std::ostringstream file;
    file << "run,seed,start,explored_edges,generations,survived,component_edges,match\n";
    file << "# " << manifest_line("branching", config) << '\n';
    long matches = 0;
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        const ExtinctionRun& run = result.runs[r];
        const bool match = run.explored_edges == run.component_edges && !run.survived;
        matches += match;
        file << r << ',' << run.seed << ',' << run.start_vertex << ',' << run.explored_edges
             << ',' << run.generations << ',' << bool01(run.survived) << ','
             << run.component_edges << ',' << bool01(match) << '\n';
    }
    file << "# finite_fraction=" << format_double(result.finite_fraction)
         << " survival_fraction=" << format_double(result.survival_fraction) << '\n';
    write_text_file(path, file.str());

    if (trace_path) {
        // re-derive the traced run's configuration the same way the
        // experiment did, then dump its stage-by-stage exploration
        const std::uint64_t run_seed = result.runs[trace_run].seed;
        Configuration graph(points.size());
        if (edge_count(points.size()) <= ExactDistribution::kMaxEdges) {
            const ExactDistribution dist = exact_distribution(points, params);
            SplitMix64 rng(run_seed);
            graph = dist.to_configuration(sample_mask(dist.cumulative(), rng.uniform()));
        } else {
            HeatBathChain chain(points, params, run_seed, cutoff.resolve(points, params));
            chain.run(options.burnin);
            graph = chain.config();
        }
        const BranchingTrace trace = explore_cluster(graph, options.start_vertex, options.caps);
        std::ostringstream tf;
        tf << "generation,parent,i,j\n";
        tf << "# " << manifest_line("branching", config) << '\n';
        tf << "# trace_run=" << trace_run << " survived=" << bool01(trace.survived) << '\n';
        for (const ExploredEdge& e : trace.edges)
            tf << e.generation << ',' << e.parent_vertex << ',' << e.edge.i << ',' << e.edge.j
               << '\n';
        write_text_file(*trace_path, tf.str());
    }

    out << "branching: wrote " << path << " (" << runs << " runs, finite fraction "
        << format_double(result.finite_fraction) << ", " << matches << " exact component matches)"
        << "\n";
}

void cmd_bounds_check(KeyValueConfig& config, std::ostream& out) {
    const PointSet points = load_points(config);
    const ModelParams params = model_params(config, points.dim());
    const std::string path = output_path(config);
    config.reject_unused();

    const int n = points.size();
    const std::size_t m = edge_count(n);
    if (m > ExactDistribution::kMaxEdges)
        throw ConfigError(config.source() + ": bounds-check needs C(n,2) <= " +
                          std::to_string(ExactDistribution::kMaxEdges) +
                          " (exact probabilities come from full enumeration)");
    const ExactDistribution dist = exact_distribution(points, params);

    std::ostringstream file;
    file << "vertex,t,exact_mean_degree,degree_bound,degree_ok,stars_checked,stars_ok\n";
    file << "# " << manifest_line("bounds-check", config) << '\n';

    bool all_ok = true;
    double worst_star_ratio = 0.0;
    for (int v = 0; v < n; ++v) {
        const double t = t_gamma(points, v, params);
        // exact E[deg v] = sum of incident-edge marginals
        double mean_degree = 0.0;
        std::vector<std::size_t> incident;
        for (std::size_t k = 0; k < m; ++k) {
            const EdgeId e = index_to_edge(n, k);
            if (e.i == v || e.j == v) {
                incident.push_back(k);
                mean_degree += dist.edge_marginal(k);
            }
        }
        const double dbound = degree_bound(t, params);
        const bool degree_ok = mean_degree <= dbound + 1e-12;

        std::uint32_t incident_mask = 0;
        for (std::size_t k : incident) incident_mask |= std::uint32_t(1) << k;

        // isolated regime: the star assigns all of v's pairs, >= 2 of them
        // open; the plain probability of that exact neighborhood
        long stars_checked = 0;
        bool stars_ok = true;
        const std::size_t star_total = std::size_t(1) << incident.size();
        for (std::size_t s = 1; s < star_total; ++s) {
            if (std::popcount(s) < 2) continue;
            Star star;
            star.center = v;
            std::uint32_t open_mask = 0;
            for (std::size_t b = 0; b < incident.size(); ++b) {
                if (s & (std::size_t(1) << b)) {
                    star.open.push_back(dist.edges[incident[b]]);
                    open_mask |= std::uint32_t(1) << incident[b];
                } else {
                    star.closed.push_back(dist.edges[incident[b]]);
                }
            }
            double p_exact = 0.0;
            for (std::size_t mask = 0; mask < dist.probabilities.size(); ++mask)
                if ((mask & incident_mask) == open_mask) p_exact += dist.probabilities[mask];
            const double bound0 = star_probability_bound(points, star, params, 0);
            ++stars_checked;
            if (p_exact > bound0 + 1e-12) stars_ok = false;
            if (bound0 > 0.0) worst_star_ratio = std::max(worst_star_ratio, p_exact / bound0);
        }

        // environment regime: one of v's pairs is known open and another
        // known closed; the star assigns the remaining pairs at v, and the
        // bound is on the conditional probability given that environment
        for (std::size_t a = 0; a < incident.size(); ++a) {
            for (std::size_t b = 0; b < incident.size(); ++b) {
                if (a == b) continue;
                const std::uint32_t fopen_bit = std::uint32_t(1) << incident[a];
                const std::uint32_t fclosed_bit = std::uint32_t(1) << incident[b];
                std::vector<std::size_t> rest;
                for (std::size_t c = 0; c < incident.size(); ++c)
                    if (c != a && c != b) rest.push_back(incident[c]);
                const std::size_t rest_total = std::size_t(1) << rest.size();
                for (std::size_t s = 1; s < rest_total; ++s) {
                    Star star;
                    star.center = v;
                    std::uint32_t open_mask = 0;
                    for (std::size_t c = 0; c < rest.size(); ++c) {
                        if (s & (std::size_t(1) << c)) {
                            star.open.push_back(dist.edges[rest[c]]);
                            open_mask |= std::uint32_t(1) << rest[c];
                        } else {
                            star.closed.push_back(dist.edges[rest[c]]);
                        }
                    }
                    const std::uint32_t rest_mask = incident_mask & ~fopen_bit & ~fclosed_bit;
                    double p_joint = 0.0, p_env = 0.0;
                    for (std::size_t mask = 0; mask < dist.probabilities.size(); ++mask) {
                        if (!(mask & fopen_bit) || (mask & fclosed_bit)) continue;
                        p_env += dist.probabilities[mask];
                        if ((mask & rest_mask) == open_mask) p_joint += dist.probabilities[mask];
                    }
                    const double p_cond = p_env > 0.0 ? p_joint / p_env : 0.0;
                    const double bound1 = star_probability_bound(points, star, params, 1);
                    ++stars_checked;
                    if (p_cond > bound1 + 1e-12) stars_ok = false;
                    if (bound1 > 0.0) worst_star_ratio = std::max(worst_star_ratio, p_cond / bound1);
                }
            }
        }
        all_ok = all_ok && degree_ok && stars_ok;
        file << v << ',' << format_double(t) << ',' << format_double(mean_degree) << ','
             << format_double(dbound) << ',' << bool01(degree_ok) << ',' << stars_checked << ','
             << bool01(stars_ok) << '\n';
    }
    file << "# all_ok=" << bool01(all_ok) << " worst_star_ratio=" << format_double(worst_star_ratio)
         << '\n';
    write_text_file(path, file.str());
    out << "bounds-check: wrote " << path << " (" << (all_ok ? "all bounds hold" : "VIOLATIONS")
        << ", worst star ratio " << format_double(worst_star_ratio) << ")\n";
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "sample-points", "sample-gibbs", "energy",    "ground-state", "region-scan",
        "domination-check", "percolation", "branching", "bounds-check"};
    return names;
}

void run_command(const std::string& command, KeyValueConfig& config, std::ostream& out) {
    if (command == "sample-points") return cmd_sample_points(config, out);
    if (command == "sample-gibbs") return cmd_sample_gibbs(config, out);
    if (command == "energy") return cmd_energy(config, out);
    if (command == "ground-state") return cmd_ground_state(config, out);
    if (command == "region-scan") return cmd_region_scan(config, out);
    if (command == "domination-check") return cmd_domination_check(config, out);
    if (command == "percolation") return cmd_percolation(config, out);
    if (command == "branching") return cmd_branching(config, out);
    if (command == "bounds-check") return cmd_bounds_check(config, out);
    throw ConfigError("unknown command '" + command + "'");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gibbs random graphs on finite point sets: sampling, ground states,\n"
                 "stochastic domination and percolation diagnostics."};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(0, 1);

    struct SubArgs {
        std::string config_path;
        std::string output;
        std::string seed;
        bool seed_set = false;
        bool output_set = false;
    };
    static const std::map<std::string, std::string> descriptions{
        {"sample-points", "Draw a Poisson or hard-core point sample into a point file"},
        {"sample-gibbs", "Equilibrate a heat-bath chain on a point file, write the graph"},
        {"energy", "Evaluate the Hamiltonian of a stored graph"},
        {"ground-state", "Minimize the Hamiltonian (matching reduction or enumeration)"},
        {"region-scan", "Tabulate the dilute-region and subcriticality predicates on a grid"},
        {"domination-check", "Compare graph conditionals against the dominating product field"},
        {"percolation", "Finite-size crossing experiment over growing boxes"},
        {"branching", "Cluster exploration / extinction statistics at equilibrium"},
        {"bounds-check", "Exact small-system check of the star and degree bounds"},
    };
    std::map<std::string, SubArgs> args;
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        SubArgs& a = args[name];
        sub->add_option("--config", a.config_path, "Experiment configuration file (key = value)")
            ->required();
        sub->add_option("--output", a.output, "Output file (overrides the config's 'output')");
        sub->add_option("--seed", a.seed, "RNG seed (overrides the config's 'seed')");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto subs = app.get_subcommands();
    if (subs.empty()) {
        err << app.help();
        return 2;
    }
    const std::string name = subs.front()->get_name();
    SubArgs& a = args[name];
    a.output_set = subs.front()->count("--output") > 0;
    a.seed_set = subs.front()->count("--seed") > 0;

    try {
        KeyValueConfig config = KeyValueConfig::parse_file(a.config_path);
        if (a.output_set) config.set("output", a.output);
        if (a.seed_set) {
            // validate the flag the same way a config value would be
            std::uint64_t v = 0;
            const char* end = a.seed.data() + a.seed.size();
            const auto [ptr, ec] = std::from_chars(a.seed.data(), end, v);
            if (ec != std::errc{} || ptr != end)
                throw ConfigError("--seed must be an unsigned 64-bit integer, got '" + a.seed +
                                  "'");
            config.set("seed", a.seed);
        }
        run_command(name, config, out);
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace gibbsgraph
