#include "mimoic/harness.hpp"

#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mimoic/errors.hpp"
#include "mimoic/metrics.hpp"

namespace mimoic {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

double to_double(std::string_view text, std::size_t line) {
    const std::string s(text);
    if (s.empty())
        throw ParseError(line, "expected a number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(line, "'" + s + "' is not a number");
    return v;
}

long long to_integer(std::string_view text, std::size_t line) {
    const std::string s(text);
    if (s.empty())
        throw ParseError(line, "expected an integer");
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(line, "'" + s + "' is not an integer");
    return v;
}

std::vector<double> to_doubles(std::string_view text, std::size_t line) {
    std::vector<double> out;
    for (auto part : split(text, ','))
        out.push_back(to_double(part, line));
    return out;
}

int to_int_field(std::string_view text, std::size_t line) {
    const long long v = to_integer(text, line);
    if (v < INT32_MIN || v > INT32_MAX)
        throw ParseError(line, "integer out of range");
    return static_cast<int>(v);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
    static const std::map<std::string, std::set<std::string>, std::less<>> keys{
        {"scenario",
         {"family", "n_links", "n_tx_ant", "n_rx_ant", "snr_db", "sir_db", "delta_noise_db", "delta_direct_db",
          "victim_link"}},
        {"sweep", {"name", "snr_grid_db", "algorithms", "trials", "base_seed", "output_path"}},
        {"settings", {"max_iters", "tol_sumrate", "init_mode", "restarts", "lambda_direct_gain"}},
    };
    return keys;
}

struct Entry {
    std::string value;
    std::size_t line;
};

SweepRow failed_row(const SweepConfig& cfg, AlgorithmId id, double snr, int trial, std::uint64_t seed,
                    const std::string& what) {
    SweepRow row;
    row.scenario = cfg.name;
    row.algorithm = id;
    row.snr_db = snr;
    row.trial = trial;
    row.seed = seed;
    row.failed = true;
    row.sum_rate_bits = row.leakage = row.ia_residual = std::nan("");
    row.error = what;
    return row;
}

// All algorithms for one (trial, snr) cell.
std::vector<SweepRow> run_cell(const SweepConfig& cfg, const ChannelRealization& base, int trial, double snr) {
    const std::uint64_t seed = trial_seed(cfg, trial);
    std::vector<SweepRow> rows;
    rows.reserve(cfg.algorithms.size());

    ScenarioSpec spec = cfg.scenario;
    spec.snr_db = snr;
    std::optional<ChannelRealization> r;
    std::optional<BeamformerProfile> init;
    std::string setup_error;
    try {
        r.emplace(base.rebind(build_scenario(spec)));
        init.emplace(initial_profile(*r, cfg.settings.init_mode, seed));
    } catch (const std::exception& e) {
        setup_error = e.what();
    }

    RunSettings settings = cfg.settings;
    settings.seed = seed;
    for (AlgorithmId id : cfg.algorithms) {
        if (!init) {
            rows.push_back(failed_row(cfg, id, snr, trial, seed, setup_error));
            continue;
        }
        try {
            const RunResult res = run_algorithm(id, *r, settings, *init);
            SweepRow row;
            row.scenario = cfg.name;
            row.algorithm = id;
            row.snr_db = snr;
            row.trial = trial;
            row.seed = seed;
            row.iterations = res.iterations;
            row.converged = res.converged;
            row.sum_rate_bits = res.sum_rate;
            row.leakage = total_leakage(*r, res.profile);
            row.ia_residual = ia_residual(*r, res.profile);
            row.init_hash = profile_hash(res.initial);
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            rows.push_back(failed_row(cfg, id, snr, trial, seed, e.what()));
        }
    }
    return rows;
}

} // namespace

void SweepConfig::validate() const {
    if (name.empty())
        throw ValidationError("name", "must not be empty");
    if (name.find_first_of(",\n\"") != std::string::npos)
        throw ValidationError("name", "must not contain commas, quotes or newlines");
    if (scenario.n_links < 1)
        throw ValidationError("n_links", "must be >= 1");
    if (scenario.n_tx_ant < 1)
        throw ValidationError("n_tx_ant", "must be >= 1");
    if (scenario.n_rx_ant < 1)
        throw ValidationError("n_rx_ant", "must be >= 1");
    if (static_cast<int>(scenario.sir_db.size()) != scenario.n_links)
        throw ValidationError("sir_db", "needs one value or n_links values");
    if (scenario.victim_link < 0 || scenario.victim_link >= scenario.n_links)
        throw ValidationError("victim_link", "must be in 1..n_links");
    if (snr_grid_db.empty())
        throw ValidationError("snr_grid_db", "must not be empty");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw ValidationError("snr_grid_db", "values must be finite");
    if (algorithms.empty())
        throw ValidationError("algorithms", "must not be empty");
    if (trials < 1)
        throw ValidationError("trials", "must be >= 1");
    if (settings.max_iters < 1)
        throw ValidationError("max_iters", "must be >= 1");
    if (!(settings.tol_sumrate > 0.0) || !std::isfinite(settings.tol_sumrate))
        throw ValidationError("tol_sumrate", "must be > 0");
    if (settings.restarts < 1)
        throw ValidationError("restarts", "must be >= 1");
    try {
        ScenarioSpec probe = scenario;
        probe.snr_db = snr_grid_db.front();
        probe.validate();
    } catch (const InvalidConfig& e) {
        throw ValidationError("scenario", e.what());
    }
}

SweepConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries; // "section.key"
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_keys().contains(section))
                throw ParseError(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section.empty())
            throw ParseError(line_no, "key '" + key + "' outside of a section");
        if (!known_keys().at(section).contains(key))
            throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
        const std::string full = section + "." + key;
        if (entries.contains(full))
            throw ParseError(line_no, "duplicate key '" + key + "'");
        if (value.empty())
            throw ParseError(line_no, "empty value for '" + key + "'");
        entries.emplace(full, Entry{value, line_no});
    }

    auto find = [&](std::string_view full) -> const Entry* {
        const auto it = entries.find(full);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto require = [&](std::string_view full) -> const Entry& {
        const Entry* e = find(full);
        if (!e)
            throw ValidationError(std::string(full.substr(full.find('.') + 1)), "missing required key");
        return *e;
    };

    SweepConfig cfg;
    auto& sc = cfg.scenario;
    {
        const Entry& e = require("scenario.family");
        try {
            sc.family = parse_family(e.value);
        } catch (const InvalidConfig& ex) {
            throw ValidationError("family", ex.what());
        }
    }
    sc.n_links = to_int_field(require("scenario.n_links").value, require("scenario.n_links").line);
    sc.n_tx_ant = to_int_field(require("scenario.n_tx_ant").value, require("scenario.n_tx_ant").line);
    sc.n_rx_ant = to_int_field(require("scenario.n_rx_ant").value, require("scenario.n_rx_ant").line);
    if (const Entry* e = find("scenario.snr_db"))
        sc.snr_db = to_double(e->value, e->line);
    if (const Entry* e = find("scenario.sir_db")) {
        sc.sir_db = to_doubles(e->value, e->line);
        if (sc.sir_db.size() == 1 && sc.n_links > 1)
            sc.sir_db.assign(static_cast<std::size_t>(std::max(sc.n_links, 1)), sc.sir_db.front());
    } else {
        sc.sir_db.assign(static_cast<std::size_t>(std::max(sc.n_links, 1)), 0.0);
    }
    if (const Entry* e = find("scenario.delta_noise_db"))
        sc.delta_noise_db = to_double(e->value, e->line);
    if (const Entry* e = find("scenario.delta_direct_db"))
        sc.delta_direct_db = to_double(e->value, e->line);
    if (const Entry* e = find("scenario.victim_link"))
        sc.victim_link = to_int_field(e->value, e->line) - 1;

    cfg.name = std::string(to_string(sc.family));
    if (const Entry* e = find("sweep.name"))
        cfg.name = e->value;
    {
        const Entry& e = require("sweep.snr_grid_db");
        cfg.snr_grid_db = to_doubles(e.value, e.line);
    }
    {
        const Entry& e = require("sweep.algorithms");
        for (auto part : split(e.value, ',')) {
            try {
                cfg.algorithms.push_back(parse_algorithm(part));
            } catch (const InvalidConfig& ex) {
                throw ValidationError("algorithms", ex.what());
            }
        }
    }
    if (const Entry* e = find("sweep.trials"))
        cfg.trials = to_int_field(e->value, e->line);
    if (const Entry* e = find("sweep.base_seed")) {
        const long long seed = to_integer(e->value, e->line);
        if (seed < 0)
            throw ValidationError("base_seed", "must be >= 0");
        cfg.base_seed = static_cast<std::uint64_t>(seed);
    }
    if (const Entry* e = find("sweep.output_path"))
        cfg.output_path = e->value;

    auto& st = cfg.settings;
    if (const Entry* e = find("settings.max_iters"))
        st.max_iters = to_int_field(e->value, e->line);
    if (const Entry* e = find("settings.tol_sumrate"))
        st.tol_sumrate = to_double(e->value, e->line);
    if (const Entry* e = find("settings.init_mode")) {
        try {
            st.init_mode = parse_init_mode(e->value);
        } catch (const InvalidConfig& ex) {
            throw ValidationError("init_mode", ex.what());
        }
    }
    if (const Entry* e = find("settings.restarts"))
        st.restarts = to_int_field(e->value, e->line);
    if (const Entry* e = find("settings.lambda_direct_gain")) {
        if (e->value == "ii")
            st.lambda_gain = LambdaDirectGain::Own;
        else if (e->value == "jj")
            st.lambda_gain = LambdaDirectGain::Victim;
        else
            throw ValidationError("lambda_direct_gain", "must be 'ii' or 'jj'");
    }

    cfg.validate();
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const SweepConfig& cfg) {
    std::ostringstream out;
    const auto& sc = cfg.scenario;
    out << "[scenario]\n";
    out << "family = " << to_string(sc.family) << "\n";
    out << "n_links = " << sc.n_links << "\n";
    out << "n_tx_ant = " << sc.n_tx_ant << "\n";
    out << "n_rx_ant = " << sc.n_rx_ant << "\n";
    out << "sir_db = " << join_doubles(sc.sir_db) << "\n";
    out << "delta_noise_db = " << format_double(sc.delta_noise_db) << "\n";
    out << "delta_direct_db = " << format_double(sc.delta_direct_db) << "\n";
    out << "victim_link = " << sc.victim_link + 1 << "\n";
    out << "\n[sweep]\n";
    out << "name = " << cfg.name << "\n";
    out << "snr_grid_db = " << join_doubles(cfg.snr_grid_db) << "\n";
    out << "algorithms = ";
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
        out << (i ? ", " : "") << to_string(cfg.algorithms[i]);
    out << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "base_seed = " << cfg.base_seed << "\n";
    if (!cfg.output_path.empty())
        out << "output_path = " << cfg.output_path << "\n";
    const auto& st = cfg.settings;
    out << "\n[settings]\n";
    out << "max_iters = " << st.max_iters << "\n";
    out << "tol_sumrate = " << format_double(st.tol_sumrate) << "\n";
    out << "init_mode = " << to_string(st.init_mode) << "\n";
    out << "restarts = " << st.restarts << "\n";
    out << "lambda_direct_gain = " << (st.lambda_gain == LambdaDirectGain::Own ? "ii" : "jj") << "\n";
    return out.str();
}

std::uint64_t trial_seed(const SweepConfig& cfg, int trial) {
    return cfg.base_seed + static_cast<std::uint64_t>(trial);
}

SweepResult run_sweep(const SweepConfig& cfg, int workers) {
    cfg.validate();
    const std::size_t n_snr = cfg.snr_grid_db.size();
    const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t n_cells = n_snr * n_trials;

    ScenarioSpec dims = cfg.scenario;
    dims.snr_db = cfg.snr_grid_db.front();
    const NetworkConfig draw_config = build_scenario(dims);

    // cell index = trial * n_snr + snr_index
    std::vector<std::vector<SweepRow>> cells(n_cells);
    std::atomic<std::size_t> next_trial{0};
    auto worker = [&] {
        for (std::size_t t = next_trial++; t < n_trials; t = next_trial++) {
            const int trial = static_cast<int>(t);
            const ChannelRealization base = draw_realization(draw_config, trial_seed(cfg, trial));
            for (std::size_t s = 0; s < n_snr; ++s)
                cells[t * n_snr + s] = run_cell(cfg, base, trial, cfg.snr_grid_db[s]);
        }
    };

    const int width = std::max(1, std::min<int>(workers, static_cast<int>(n_trials)));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(width));
        for (int k = 0; k < width; ++k)
            pool.emplace_back(worker);
    }

    SweepResult result;
    result.rows.reserve(n_cells * cfg.algorithms.size());
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
        for (std::size_t s = 0; s < n_snr; ++s)
            for (std::size_t t = 0; t < n_trials; ++t)
                result.rows.push_back(cells[t * n_snr + s][a]);
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& row : result.rows) {
        out << row.scenario << ',' << to_string(row.algorithm) << ',' << format_double(row.snr_db) << ','
            << row.trial << ',' << row.seed << ',' << row.iterations << ','
            << (row.failed ? "error" : (row.converged ? "true" : "false")) << ','
            << format_double(row.sum_rate_bits) << ',' << format_double(row.leakage) << ','
            << format_double(row.ia_residual) << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    emit_csv(result, out);
    return out.str();
}

SweepResult parse_csv(std::string_view text) {
    SweepResult result;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != kCsvHeader)
                throw ParseError(1, "unexpected CSV header");
            continue;
        }
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw ParseError(line_no, "expected 10 fields");
        SweepRow row;
        row.scenario = std::string(f[0]);
        row.algorithm = parse_algorithm(f[1]);
        row.snr_db = to_double(f[2], line_no);
        row.trial = to_int_field(f[3], line_no);
        row.seed = static_cast<std::uint64_t>(std::stoull(std::string(f[4])));
        row.iterations = to_int_field(f[5], line_no);
        row.failed = f[6] == "error";
        row.converged = f[6] == "true";
        row.sum_rate_bits = to_double(f[7], line_no);
        row.leakage = to_double(f[8], line_no);
        row.ia_residual = to_double(f[9], line_no);
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::uint64_t profile_hash(const BeamformerProfile& profile) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const ComplexVector& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double parts[2] = {v(i).real(), v(i).imag()};
            unsigned char bytes[sizeof parts];
            std::memcpy(bytes, parts, sizeof parts);
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 0x100000001b3ULL;
            }
        }
    };
    for (const auto& w : profile.tx)
        mix(w);
    for (const auto& v : profile.rx)
        mix(v);
    return h;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig4", "fig6", "fig7"};
}

std::string preset_description(std::string_view name) {
    if (name == "fig3")
        return "symmetric [3,2,2], SIR 0 dB on every link";
    if (name == "fig4")
        return "asym_noise [3,2,2], SIR 10 dB, link 3 noise +20 dB";
    if (name == "fig6")
        return "asym_sir [3,2,2], SIR [10, 10, -10] dB, link 3 noise +20 dB";
    if (name == "fig7")
        return "weak_direct [3,2,2], SIR 0 dB, link 1 direct gain -30 dB";
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

SweepConfig preset(std::string_view name) {
    SweepConfig cfg;
    cfg.name = std::string(name);
    cfg.scenario.n_links = 3;
    cfg.scenario.n_tx_ant = 2;
    cfg.scenario.n_rx_ant = 2;
    cfg.snr_grid_db = {0, 5, 10, 15, 20, 25, 30, 35, 40};
    cfg.algorithms = {AlgorithmId::DBA, AlgorithmId::SRMAX, AlgorithmId::MAXSINR, AlgorithmId::ALTMIN};
    cfg.trials = 100;
    cfg.base_seed = 1;
    cfg.output_path = cfg.name + ".csv";
    auto& sc = cfg.scenario;
    if (name == "fig3") {
        sc.family = ScenarioFamily::Symmetric;
        sc.sir_db = {0, 0, 0};
    } else if (name == "fig4") {
        sc.family = ScenarioFamily::AsymNoise;
        sc.sir_db = {10, 10, 10};
        sc.delta_noise_db = 20;
        sc.victim_link = 2;
    } else if (name == "fig6") {
        sc.family = ScenarioFamily::AsymSir;
        sc.sir_db = {10, 10, -10};
        sc.delta_noise_db = 20;
        sc.victim_link = 2;
    } else if (name == "fig7") {
        sc.family = ScenarioFamily::WeakDirect;
        sc.sir_db = {0, 0, 0};
        sc.delta_direct_db = 30;
        sc.victim_link = 0;
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    cfg.validate();
    return cfg;
}

int resolve_workers(std::optional<int> requested) {
    if (requested) {
        if (*requested < 1)
            throw std::invalid_argument("--parallel must be >= 1");
        return *requested;
    }
    if (const char* env = std::getenv("MIMOIC_PARALLEL")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument("MIMOIC_PARALLEL must be a positive integer");
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace mimoic
