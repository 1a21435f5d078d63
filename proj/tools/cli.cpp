#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fracdep/analytic.hpp"
#include "fracdep/error.hpp"
#include "fracdep/estimate.hpp"
#include "fracdep/grid.hpp"
#include "fracdep/sim.hpp"

namespace fracdep::cli {

namespace {

using Cell = std::variant<double, std::int64_t, std::string>;
using Meta = std::vector<std::pair<std::string, Cell>>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Meta footer;
};

struct Config {
    std::string command;
    std::string process;
    double beta = 0.5;
    double lambda = 1.0;
    double alpha = 1.0;
    double p = 1.0;
    std::optional<double> delta;
    double s = 1.0;
    std::string t_text;
    std::uint64_t n = 2;
    std::string m_text = "10,100,1000";
    std::uint64_t reps = 10000;
    std::uint64_t seed = 42;
    std::string mode = "analytic";
    unsigned threads = 0;
    std::string output = "csv";
    std::string out_path;
    bool empirical = false;
    double stable_step = 0.0;
    std::optional<double> t_min;
    std::string input;
    bool fnbn_exact = false;

    [[nodiscard]] ProcessParams params() const { return {beta, lambda, alpha, p}; }
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Config& cfg, const Meta& meta, const Table& t) {
    os << "# fracdep " << cfg.command << '\n';
    for (const auto& [k, v] : meta) os << "# " << k << '=' << format_cell(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
    for (const auto& [k, v] : t.footer) os << "# " << k << '=' << format_cell(v) << '\n';
}

void write_json(std::ostream& os, const Meta& meta, const Table& t) {
    nlohmann::ordered_json doc;
    auto& m = doc["meta"];
    for (const auto& [k, v] : meta) m[k] = json_cell(v);
    for (const auto& [k, v] : t.footer) m[k] = json_cell(v);
    auto data = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        data.push_back(std::move(obj));
    }
    doc["data"] = std::move(data);
    os << doc.dump(2) << '\n';
}

Meta process_meta(const Config& c) {
    Meta m{{"command", c.command}, {"process", c.process}};
    m.emplace_back("beta", c.beta);
    m.emplace_back("lambda", c.lambda);
    const bool nb = c.process == "fnbp" || c.process == "fnbn" || c.process == "nb" ||
                    c.process == "gamma";
    if (nb) {
        m.emplace_back("alpha", c.alpha);
        m.emplace_back("p", c.p);
    }
    if (c.delta) m.emplace_back("delta", *c.delta);
    return m;
}

void add_mc_meta(Meta& m, const Config& c) {
    m.emplace_back("reps", static_cast<std::int64_t>(c.reps));
    m.emplace_back("seed", static_cast<std::int64_t>(c.seed));
    m.emplace_back("stable_step", c.stable_step > 0.0 ? Cell{c.stable_step} : Cell{std::string("auto")});
}

std::vector<double> time_grid(const Config& c) {
    if (c.t_text.empty()) throw GridError("no times given; use --t or --t-grid");
    return grid::parse(c.t_text);
}

bool is_noise(const std::string& process) { return process == "fpn" || process == "fnbn"; }

void validate_process(const Config& c) {
    const ProcessParams pp = c.params();
    const bool nb = c.process == "fnbp" || c.process == "fnbn";
    if (nb) {
        pp.fnbp().validate();
    } else {
        pp.fpp().validate();
    }
    if (is_noise(c.process)) {
        if (!c.delta) throw DomainError("--delta is required for process " + c.process);
    }
    if (c.delta && !(*c.delta > 0.0 && std::isfinite(*c.delta)))
        throw DomainError("--delta must be > 0");
}

estimate::CurveProcess curve_process(const std::string& name) {
    if (name == "fpp") return estimate::CurveProcess::Fpp;
    if (name == "fpn") return estimate::CurveProcess::Fpn;
    if (name == "fnbp") return estimate::CurveProcess::Fnbp;
    return estimate::CurveProcess::Fnbn;
}

estimate::McConfig mc_config(const Config& c) {
    if (c.reps == 0) throw DomainError("--reps must be positive");
    return {c.reps, {c.seed, 0}, c.threads};
}

// ------------------------------------------------------------- moments -----

Table cmd_moments(const Config& c, Meta& meta) {
    validate_process(c);
    const auto ts = time_grid(c);
    meta = process_meta(c);
    meta.emplace_back("t_grid", c.t_text);
    const ProcessParams pp = c.params();
    Table t{{"t", "mean", "variance"}, {}, {}};
    for (double x : ts) {
        if (x < 0.0) throw GridError("times must be >= 0");
        double mean = 0.0;
        double var = 0.0;
        if (c.process == "fpp") {
            mean = analytic::fpp_mean(pp.fpp(), x);
            var = analytic::fpp_variance(pp.fpp(), x);
        } else if (c.process == "fpn") {
            mean = analytic::fpn_mean({pp.fpp(), *c.delta}, x);
            var = analytic::fpn_variance({pp.fpp(), *c.delta}, x);
        } else if (c.process == "fnbp") {
            mean = analytic::fnbp_mean(pp.fnbp(), x);
            var = analytic::fnbp_variance(pp.fnbp(), x);
        } else {
            mean = analytic::fnbn_mean({pp.fnbp(), *c.delta}, x);
            var = analytic::fnbn_variance({pp.fnbp(), *c.delta}, x);
        }
        t.rows.push_back({x, mean, var});
    }
    return t;
}

// ---------------------------------------------------------------- corr -----

estimate::CorrelationCurve compute_curve(const Config& c) {
    validate_process(c);
    const auto ts = time_grid(c);
    const std::optional<double> delta = is_noise(c.process) ? c.delta : std::nullopt;
    if (!(c.s > 0.0)) throw DomainError("--s must be > 0");
    if (!(c.s < ts.front()) || !(c.s + delta.value_or(0.0) <= ts.front()))
        throw GridError("--s (and s + delta) must lie below the smallest t");
    if (c.mode == "analytic")
        return estimate::analytic_correlation(curve_process(c.process), c.params(), c.s, ts, delta,
                                              !c.fnbn_exact);
    sim::PathSpec spec;
    spec.process = (c.process == "fpp" || c.process == "fpn") ? sim::ProcessKind::Fpp
                                                              : sim::ProcessKind::Fnbp;
    spec.params = c.params();
    spec.stable_step = c.stable_step;
    return estimate::mc_correlation(spec, c.s, ts, delta, mc_config(c));
}

Meta curve_meta(const Config& c) {
    Meta meta = process_meta(c);
    meta.emplace_back("s", c.s);
    meta.emplace_back("t_grid", c.t_text);
    meta.emplace_back("mode", c.mode);
    if (c.process == "fnbn" && c.mode == "analytic")
        meta.emplace_back("fnbn_form", std::string(c.fnbn_exact ? "exact" : "asymptotic"));
    if (c.mode == "empirical") add_mc_meta(meta, c);
    return meta;
}

Table cmd_corr(const Config& c, Meta& meta) {
    const auto curve = compute_curve(c);
    meta = curve_meta(c);
    const bool se = curve.source == estimate::Source::Empirical;
    Table t{{"t", "corr"}, {}, {}};
    if (se) t.columns.push_back("std_error");
    for (const auto& pt : curve.points) {
        std::vector<Cell> row{pt.t, pt.corr};
        if (se) row.emplace_back(pt.std_error.value_or(std::nan("")));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ------------------------------------------------------------ classify -----

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw DomainError("cannot parse " + what + " value '" + s + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

struct PipedCurve {
    std::map<std::string, std::string> meta;
    estimate::CorrelationCurve curve;
};

PipedCurve read_curve(std::istream& is) {
    PipedCurve pc;
    std::vector<std::string> cols;
    std::string line;
    int it = -1, ic = -1, ise = -1;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto body = line.substr(line.find_first_not_of("# ") == std::string::npos
                                              ? line.size()
                                              : line.find_first_not_of("# "));
            const auto eq = body.find('=');
            if (eq != std::string::npos) pc.meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (cols.empty()) {
            cols = split_csv(line);
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == "t") it = static_cast<int>(i);
                if (cols[i] == "corr") ic = static_cast<int>(i);
                if (cols[i] == "std_error") ise = static_cast<int>(i);
            }
            if (it < 0 || ic < 0) throw DomainError("classify input needs columns t and corr");
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != cols.size())
            throw DomainError("classify input: row has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(cols.size()));
        estimate::CurvePoint pt;
        pt.t = parse_double(cells[it], "t");
        pt.corr = parse_double(cells[ic], "corr");
        if (ise >= 0 && cells[ise] != "nan") pt.std_error = parse_double(cells[ise], "std_error");
        pc.curve.points.push_back(pt);
    }
    if (cols.empty()) throw DomainError("classify input is empty");
    pc.curve.source = ise >= 0 ? estimate::Source::Empirical : estimate::Source::Analytic;
    return pc;
}

Table classify_table(const Config& c, const estimate::CorrelationCurve& curve) {
    const std::optional<double> delta = is_noise(c.process) ? c.delta : std::nullopt;
    const double t_min = c.t_min.value_or(estimate::default_t_min(c.s, delta));
    const auto fit = estimate::fit_power_law(curve, t_min);
    Table t{{"d_hat", "c_hat", "r_squared", "label", "points_used", "t_min"}, {}, {}};
    std::vector<Cell> row{fit.d_hat, fit.c_hat, fit.r_squared,
                          std::string(analytic::to_string(fit.label)),
                          static_cast<std::int64_t>(fit.points_used), t_min};
    if (!c.process.empty()) {
        const double theory = estimate::theoretical_exponent(curve_process(c.process), c.params(), delta);
        t.columns.insert(t.columns.end(), {"theoretical_exponent", "abs_error"});
        row.emplace_back(theory);
        row.emplace_back(std::abs(fit.d_hat - theory));
    }
    t.rows.push_back(std::move(row));
    return t;
}

void apply_piped_meta(Config& c, const std::map<std::string, std::string>& meta,
                      const CLI::App& sub) {
    auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    auto num = [&](const char* key, const char* flag, auto& field) {
        const auto it = meta.find(key);
        if (it == meta.end() || given(flag)) return;
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, std::optional<double>>) {
            field = parse_double(it->second, key);
        } else if constexpr (std::is_floating_point_v<T>) {
            field = parse_double(it->second, key);
        } else {
            field = static_cast<T>(parse_double(it->second, key));
        }
    };
    auto str = [&](const char* key, const char* flag, std::string& field) {
        const auto it = meta.find(key);
        if (it != meta.end() && !given(flag)) field = it->second;
    };
    str("process", "--process", c.process);
    num("beta", "--beta", c.beta);
    num("lambda", "--lambda", c.lambda);
    num("alpha", "--alpha", c.alpha);
    num("p", "--p", c.p);
    num("delta", "--delta", c.delta);
    num("s", "--s", c.s);
    str("mode", "--mode", c.mode);
    if (!given("--t") && !given("--t-grid")) str("t_grid", "--t-grid", c.t_text);
    num("reps", "--reps", c.reps);
    num("seed", "--seed", c.seed);
    if (const auto it = meta.find("stable_step");
        it != meta.end() && it->second != "auto" && !given("--stable-step"))
        c.stable_step = parse_double(it->second, "stable_step");
    if (const auto it = meta.find("fnbn_form"); it != meta.end() && !given("--fnbn-exact"))
        c.fnbn_exact = it->second == "exact";
}

Table cmd_classify(Config& c, Meta& meta, std::istream& in, const CLI::App& sub) {
    estimate::CorrelationCurve curve;
    if (!c.input.empty()) {
        PipedCurve pc;
        if (c.input == "-") {
            pc = read_curve(in);
        } else {
            std::ifstream f(c.input);
            if (!f) throw DomainError("cannot open --input file '" + c.input + "'");
            pc = read_curve(f);
        }
        apply_piped_meta(c, pc.meta, sub);
        if (!c.process.empty()) validate_process(c);
        curve = std::move(pc.curve);
        curve.s = c.s;
        curve.delta = c.delta;
        meta = curve_meta(c);
    } else {
        if (c.process.empty()) throw DomainError("classify needs --process or --input");
        curve = compute_curve(c);
        meta = curve_meta(c);
    }
    return classify_table(c, curve);
}

// --------------------------------------------------------------- delta -----

std::vector<std::uint64_t> parse_m_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const auto& part : split_csv(text)) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v == 0)
            throw DomainError("--m expects a comma list of positive integers, got '" + part + "'");
        out.push_back(v);
    }
    if (out.empty()) throw DomainError("--m list is empty");
    return out;
}

Table cmd_delta(const Config& c, Meta& meta) {
    const FppParams fp = c.params().fpp();
    fp.validate();
    if (c.n < 1) throw DomainError("--n must be >= 1");
    const auto ms = parse_m_list(c.m_text);
    meta = {{"command", c.command}, {"beta", c.beta}, {"lambda", c.lambda},
            {"n", static_cast<std::int64_t>(c.n)}, {"m", c.m_text},
            {"empirical", std::string(c.empirical ? "true" : "false")}};
    if (c.empirical) add_mc_meta(meta, c);

    const auto exact = estimate::delta_analytic(fp, c.n, ms);
    Table t{{"m", "delta_analytic"}, {}, {}};
    std::optional<estimate::DeltaTable> mc;
    if (c.empirical) {
        mc = estimate::delta_empirical(fp, c.n, ms, mc_config(c), c.stable_step);
        t.columns.insert(t.columns.end(), {"delta_empirical", "std_error"});
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        std::vector<Cell> row{static_cast<std::int64_t>(ms[i]), exact.rows[i].value};
        if (mc) {
            row.emplace_back(mc->rows[i].value);
            row.emplace_back(mc->rows[i].std_error.value_or(std::nan("")));
        }
        t.rows.push_back(std::move(row));
    }
    t.footer.emplace_back("bound", analytic::delta_bound(fp, c.n));
    return t;
}

// ------------------------------------------------------------ simulate -----

sim::ProcessKind sim_kind(const std::string& name) {
    if (name == "poisson") return sim::ProcessKind::Poisson;
    if (name == "gamma") return sim::ProcessKind::Gamma;
    if (name == "inv_stable") return sim::ProcessKind::InverseStable;
    if (name == "fpp") return sim::ProcessKind::Fpp;
    if (name == "nb") return sim::ProcessKind::NegativeBinomial;
    return sim::ProcessKind::Fnbp;
}

Table cmd_simulate(const Config& c, Meta& meta) {
    sim::PathSpec spec;
    spec.process = sim_kind(c.process);
    spec.params = c.params();
    spec.t_grid = time_grid(c);
    spec.stable_step = c.stable_step;
    spec.validate();
    const auto mcfg = mc_config(c);
    meta = process_meta(c);
    meta.emplace_back("t_grid", c.t_text);
    add_mc_meta(meta, c);

    const std::size_t g = spec.t_grid.size();
    std::vector<double> values(mcfg.reps * g);
    sim::parallel_for(mcfg.reps, mcfg.threads, [&](std::uint64_t r) {
        const auto path = sim::sample_process_path(spec, {mcfg.seed.root, r});
        std::copy(path.values.begin(), path.values.end(), values.begin() + r * g);
    });
    Table t{{"replication", "t", "value"}, {}, {}};
    t.rows.reserve(values.size());
    for (std::uint64_t r = 0; r < mcfg.reps; ++r)
        for (std::size_t j = 0; j < g; ++j)
            t.rows.push_back({static_cast<std::int64_t>(r), spec.t_grid[j], values[r * g + j]});
    return t;
}

// --------------------------------------------------------------- setup -----

void add_model_flags(CLI::App* sub, Config& c, const std::vector<std::string>& processes) {
    sub->add_option("--process", c.process, "Process")->check(CLI::IsMember(processes));
    sub->add_option("--beta", c.beta, "Fractional index, 0 < beta <= 1")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "Poisson rate, > 0")->capture_default_str();
    sub->add_option("--alpha", c.alpha, "Gamma subordinator rate, > 0")->capture_default_str();
    sub->add_option("--p", c.p, "Gamma subordinator shape per unit time, > 0")->capture_default_str();
    sub->add_option("--delta", c.delta, "Increment width for fpn / fnbn");
}

void add_time_flags(CLI::App* sub, Config& c) {
    auto* t = sub->add_option("--t", c.t_text, "Times: comma list or geom:/lin: grid");
    sub->add_option("--t-grid", c.t_text, "Same as --t")->excludes(t);
}

void add_mc_flags(CLI::App* sub, Config& c) {
    sub->add_option("--reps", c.reps, "Monte Carlo replications")->capture_default_str();
    sub->add_option("--seed", c.seed, "Root seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads, 0 = auto")->capture_default_str();
    sub->add_option("--stable-step", c.stable_step, "Stable-path step, 0 = auto")
        ->check(CLI::NonNegativeNumber);
}

void add_output_flags(CLI::App* sub, Config& c) {
    sub->add_option("--output", c.output, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", c.out_path, "Output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    Config c;
    CLI::App app{"Second-order structure of fractional Poisson and negative binomial processes",
                 "fracdep"};
    app.require_subcommand(1);

    const std::vector<std::string> curve_procs{"fpp", "fpn", "fnbp", "fnbn"};

    auto* moments = app.add_subcommand("moments", "Exact mean and variance");
    add_model_flags(moments, c, curve_procs);
    add_time_flags(moments, c);
    add_output_flags(moments, c);

    auto* corr = app.add_subcommand("corr", "Correlation curve Corr[X(s), X(t)]");
    auto* classify = app.add_subcommand("classify", "Fit the decay exponent and label LRD / SRD");
    for (auto* sub : {corr, classify}) {
        add_model_flags(sub, c, curve_procs);
        add_time_flags(sub, c);
        add_mc_flags(sub, c);
        add_output_flags(sub, c);
        sub->add_option("--s", c.s, "Reference time s")->capture_default_str();
        sub->add_option("--mode", c.mode, "analytic or empirical")
            ->check(CLI::IsMember({"analytic", "empirical"}))
            ->capture_default_str();
        sub->add_flag("--fnbn-exact", c.fnbn_exact,
                      "Exact fnbn correlation instead of its large-t form");
    }
    classify->add_option("--t-min", c.t_min, "Smallest t used in the fit (default 100 max(s, delta))");
    classify->add_option("--input", c.input, "Read a corr CSV from a file, or - for stdin");

    auto* delta = app.add_subcommand("delta", "Block variance ratio table for the FPP");
    delta->add_option("--beta", c.beta, "Fractional index")->capture_default_str();
    delta->add_option("--lambda", c.lambda, "Poisson rate")->capture_default_str();
    delta->add_option("--n", c.n, "Block index n >= 1")->capture_default_str();
    delta->add_option("--m", c.m_text, "Comma list of block sizes")->capture_default_str();
    delta->add_flag("--empirical", c.empirical, "Add Monte Carlo columns");
    add_mc_flags(delta, c);
    add_output_flags(delta, c);

    auto* simulate = app.add_subcommand("simulate", "Dump simulated paths");
    add_model_flags(simulate, c, {"poisson", "gamma", "inv_stable", "fpp", "nb", "fnbp"});
    add_time_flags(simulate, c);
    add_mc_flags(simulate, c);
    add_output_flags(simulate, c);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    try {
        if (c.command != "delta" && c.command != "classify" && c.process.empty())
            throw DomainError("--process is required");
        Meta meta;
        Table table;
        if (c.command == "moments") table = cmd_moments(c, meta);
        else if (c.command == "corr") table = cmd_corr(c, meta);
        else if (c.command == "classify") table = cmd_classify(c, meta, in, *sub);
        else if (c.command == "delta") table = cmd_delta(c, meta);
        else table = cmd_simulate(c, meta);

        std::ostringstream buf;
        if (c.output == "json") write_json(buf, meta, table);
        else write_csv(buf, c, meta, table);
        if (c.out_path.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(c.out_path, std::ios::binary);
            if (!f) throw DomainError("cannot open --out file '" + c.out_path + "'");
            f << buf.str();
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace fracdep::cli
