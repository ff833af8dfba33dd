#include "nalab/experiments.hpp"

#include "nalab/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace nalab {

namespace {

using nlohmann::json;

const std::set<std::string> kCheckerIds = {"ap-loc", "large-scale", "necessary", "easy-check",
                                           "msw", "classical-ap", "weak-type", "strong-type",
                                           "fs", "vector-valued", "weak-11", "kolmogorov"};

const std::set<std::string> kCheckerKeys = {"id", "p", "s", "alpha", "beta", "eta", "k", "family",
                                            "family_count", "j_range", "cut_range", "f", "refine",
                                            "sweep_step", "r", "count", "q", "cases"};

const std::set<std::string> kNumericCheckerKeys = {"p", "s", "alpha", "beta", "eta", "k", "r", "count", "q", "cases"};

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ConfigError(where + ": unknown field '" + item.key() + "'");
}

SpaceParams parse_space(const json& j)
{
    only_keys(j, {"m", "k", "sigma", "tau"}, "space");
    const bool dims = j.contains("m") || j.contains("k");
    const bool jacobi = j.contains("sigma") || j.contains("tau");
    if (dims == jacobi)
        throw ConfigError("space: give either (m, k) or (sigma, tau)");
    try {
        if (dims)
            return SpaceParams::from_dimensions(j.at("m").get<int>(), j.at("k").get<int>());
        return SpaceParams::from_jacobi(j.at("sigma").get<double>(), j.at("tau").get<double>());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("space: ") + e.what());
    }
}

std::string number_text(double x)
{
    if (!std::isfinite(x))
        return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

} // namespace

WeightSpec parse_weight_spec(const json& j)
{
    if (!j.is_object() || !j.contains("variant"))
        throw ConfigError("weight: expected an object with a 'variant' field");
    try {
        const std::string v = j.at("variant").get<std::string>();
        if (v == "Constant") {
            only_keys(j, {"variant"}, "weight");
            return WeightSpec{weight::Constant{}};
        }
        if (v == "ExpRadial") {
            only_keys(j, {"variant", "gamma"}, "weight");
            return WeightSpec{weight::ExpRadial{j.at("gamma").get<double>()}};
        }
        if (v == "ExpStrong") {
            only_keys(j, {"variant", "p"}, "weight");
            return WeightSpec{weight::ExpStrong{j.at("p").get<double>()}};
        }
        if (v == "SphericalU") {
            only_keys(j, {"variant", "p"}, "weight");
            return WeightSpec{weight::SphericalU{j.at("p").get<double>()}};
        }
        if (v == "JacobiV") {
            only_keys(j, {"variant", "gamma"}, "weight");
            return WeightSpec{weight::JacobiV{j.at("gamma").get<double>()}};
        }
        if (v == "EtaProduct") {
            only_keys(j, {"variant", "base"}, "weight");
            return eta_product(parse_weight_spec(j.at("base")));
        }
        if (v == "Custom") {
            only_keys(j, {"variant", "power", "values"}, "weight");
            if (j.contains("power") == j.contains("values"))
                throw ConfigError("weight: Custom needs exactly one of 'power' or 'values'");
            if (j.contains("power"))
                return power_law(j.at("power").get<double>());
            weight::Custom c;
            c.label = "values";
            c.values = j.at("values").get<std::vector<double>>();
            return WeightSpec{c};
        }
        throw ConfigError("weight: unknown variant '" + v + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("weight: ") + e.what());
    }
}

ExperimentConfig parse_config(const json& j)
{
    only_keys(j, {"space", "grid", "backend", "tree", "weight", "checker", "seed", "axes", "output"}, "config");
    ExperimentConfig c;
    try {
        if (j.contains("space")) {
            c.space = parse_space(j.at("space"));
            c.space_json = j.at("space");
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            only_keys(g, {"J_max", "N_max", "normalize", "normalization", "exact_mass"}, "grid");
            c.J_max = g.value("J_max", c.J_max);
            c.N_max = g.value("N_max", c.N_max);
            if (g.contains("normalization")) {
                const std::string n = g.at("normalization").get<std::string>();
                if (n == "peak")
                    c.normalization = Normalization::peak;
                else if (n == "median")
                    c.normalization = Normalization::median;
                else if (n == "none")
                    c.normalization = Normalization::none;
                else
                    throw ConfigError("grid: unknown normalization '" + n + "'");
            }
            if (g.contains("normalize") && !g.at("normalize").get<bool>())
                c.normalization = Normalization::none;
            c.exact_mass = g.value("exact_mass", false);
            if (c.J_max < 2 || c.N_max < 1 || c.N_max > c.J_max - 2)
                throw ConfigError("grid: need 1 <= N_max <= J_max - 2");
        }
        if (j.contains("backend")) {
            c.backend = j.at("backend").get<std::string>();
            if (c.backend != "radial" && c.backend != "tree")
                throw ConfigError("backend: expected 'radial' or 'tree'");
        }
        if (j.contains("tree")) {
            const json& t = j.at("tree");
            only_keys(t, {"k", "depth"}, "tree");
            c.tree_k = t.value("k", c.tree_k);
            c.tree_depth = t.value("depth", c.tree_depth);
            if (c.tree_k < 2 || c.tree_depth < 1 || c.tree_depth > 12)
                throw ConfigError("tree: need k >= 2 and 1 <= depth <= 12");
        }
        if (j.contains("weight")) {
            parse_weight_spec(j.at("weight"));
            c.weight = j.at("weight");
        }
        if (j.contains("checker")) {
            const json& ch = j.at("checker");
            only_keys(ch, kCheckerKeys, "checker");
            c.checker = ch.at("id").get<std::string>();
            c.checker_params = ch;
            c.checker_params.erase("id");
        }
        if (!kCheckerIds.count(c.checker))
            throw ConfigError("checker: unknown id '" + c.checker + "'");
        if (j.contains("seed"))
            c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("axes")) {
            const json& a = j.at("axes");
            if (!a.is_object())
                throw ConfigError("axes: expected an object");
            for (const auto& item : a.items()) {
                const std::string& name = item.key();
                const bool known = kNumericCheckerKeys.count(name) || name.rfind("weight.", 0) == 0 ||
                                   name == "grid.J_max" || name == "grid.N_max" || name == "seed";
                if (!known)
                    throw ConfigError("axes: unknown axis '" + name + "'");
                c.axes[name] = item.value().get<std::vector<double>>();
                if (c.axes[name].empty())
                    throw ConfigError("axes: axis '" + name + "' has no values");
            }
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            only_keys(o, {"dir", "name"}, "output");
            c.output_dir = o.value("dir", std::string());
            c.output_name = o.value("name", std::string());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

std::string resolve_output_dir(const std::string& flag_value)
{
    if (!flag_value.empty())
        return flag_value;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env)
        return env;
    return "reports";
}

json outcome_json(const ExperimentOutcome& outcome, const std::string& timestamp)
{
    json reports = json::array();
    for (const auto& [label, rep] : outcome.reports) {
        json r = to_json(rep);
        r["label"] = label;
        reports.push_back(std::move(r));
    }
    return {{"id", outcome.id},
            {"verdict", outcome.pass ? "pass" : "fail"},
            {"seed", outcome.seed},
            {"summary", outcome.summary},
            {"reports", reports},
            {"timestamp", timestamp}};
}

std::string csv_header(const std::vector<std::string>& param_columns)
{
    std::string h = "id";
    for (const auto& p : param_columns)
        h += "," + p;
    return h + ",constant,slope,r2,verdict\n";
}

std::string csv_row(const std::string& id, const std::vector<std::string>& params, const CheckReport& report)
{
    std::string row = id;
    for (const auto& p : params)
        row += "," + p;
    row += "," + number_text(report.constant);
    row += "," + (report.fit ? number_text(report.fit->slope) : std::string());
    row += "," + (report.fit ? number_text(report.fit->r2) : std::string());
    row += "," + to_string(report.verdict) + "\n";
    return row;
}

std::string outcome_csv(const ExperimentOutcome& outcome)
{
    std::string out = csv_header({"label"});
    for (const auto& [label, rep] : outcome.reports)
        out += csv_row(outcome.id, {label}, rep);
    return out;
}

std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows)
{
    std::vector<std::string> names;
    for (const auto& [name, values] : config.axes)
        names.push_back(name);
    std::string out = csv_header(names);
    for (const auto& row : rows) {
        std::vector<std::string> params;
        for (double v : row.params)
            params.push_back(number_text(v));
        out += csv_row(row.report.id, params, row.report);
    }
    return out;
}

std::string current_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text)
{
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

} // namespace nalab
