#include "fractalhisto/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

const json& need(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing required field '" + key + "'");
    return *it;
}

double need_number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = need(obj, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::vector<double> need_number_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

ModulusSpec parse_modulus(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object {kind, ...}");
    const std::string kind = need(v, "kind", path).get<std::string>();
    if (kind == "linear") return ModulusSpec::linear(need_number(v, "k", path));
    if (kind == "hyperbolic") return ModulusSpec::hyperbolic();
    fail(path + ".kind", "unknown modulus kind '" + kind + "' (known: linear, hyperbolic)");
}

ScalingSpec parse_scaling(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object {kind, ...}");
    const std::string kind = need(v, "kind", path).get<std::string>();
    if (kind == "constant") return ScalingSpec::constant(need_number(v, "value", path));
    if (kind == "linear-in-t") return ScalingSpec::linear_in_t(need_number(v, "slope", path));
    fail(path + ".kind", "unknown scaling kind '" + kind + "' (known: constant, linear-in-t)");
}

ContractionSpec parse_contraction(const json& v, const ModulusSpec& modulus,
                                  const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object {kind, ...}");
    const std::string kind = need(v, "kind", path).get<std::string>();
    if (kind == "linear") return {ContractionKind::linear, need_number(v, "k", path), modulus};
    if (kind == "scaled-sine")
        return {ContractionKind::scaled_sine, need_number(v, "a", path), modulus};
    if (kind == "reciprocal")
        return {ContractionKind::reciprocal, need_number(v, "c", path), modulus};
    if (kind == "scaled-tanh")
        return {ContractionKind::scaled_tanh, need_number(v, "a", path), modulus};
    fail(path + ".kind", "unknown contraction kind '" + kind +
                             "' (known: linear, scaled-sine, reciprocal, scaled-tanh)");
}

Interval parse_interval(const json& v, const std::string& path) {
    const std::vector<double> pair = need_number_array(v, path);
    if (pair.size() != 2) fail(path, "expected [lo, hi]");
    return {pair[0], pair[1]};
}

}  // namespace

RunMode parse_mode(const std::string& name) {
    if (name == "solve") return RunMode::solve;
    if (name == "construct") return RunMode::construct;
    if (name == "verify") return RunMode::verify;
    if (name == "attractor") return RunMode::attractor;
    if (name == "diagnose") return RunMode::diagnose;
    if (name == "check") return RunMode::check;
    throw ConfigError("unknown mode '" + name +
                      "' (known: solve, construct, verify, attractor, diagnose, check)");
}

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::solve: return "solve";
        case RunMode::construct: return "construct";
        case RunMode::verify: return "verify";
        case RunMode::attractor: return "attractor";
        case RunMode::diagnose: return "diagnose";
        case RunMode::check: return "check";
    }
    return "?";
}

Partition RunConfig::partition() const { return build_partition(knots); }

bool RunConfig::has_offsets() const {
    if (maps.empty()) return false;
    for (const auto& m : maps) {
        if (!m.d.has_value()) return false;
    }
    return true;
}

std::vector<double> RunConfig::offsets() const {
    std::vector<double> d;
    d.reserve(maps.size());
    for (const auto& m : maps) {
        if (!m.d.has_value()) throw ConfigError("maps[].d is required for this operation");
        d.push_back(*m.d);
    }
    return d;
}

HistopolationProblem RunConfig::problem() const {
    if (!histogram.has_value()) throw ConfigError("missing required field 'histogram'");
    HistopolationProblem prob{partition(), Histogram{*histogram}, {}, {}, {}, solver};
    for (const auto& m : maps) {
        prob.c.push_back(m.c);
        prob.delta.push_back(m.delta);
        prob.s.push_back(m.s);
    }
    return prob;
}

FractalSystem RunConfig::system(SystemMode m, std::vector<double> d) const {
    std::vector<double> c;
    std::vector<ScalingSpec> delta;
    std::vector<ContractionSpec> s;
    for (const auto& map : maps) {
        c.push_back(map.c);
        delta.push_back(map.delta);
        s.push_back(map.s);
    }
    return assemble_system(partition(), std::move(c), std::move(d), std::move(delta), std::move(s),
                           m);
}

FractalSystem RunConfig::system(SystemMode m) const { return system(m, offsets()); }

void validate_config(const RunConfig& cfg) {
    if (cfg.knots.empty()) throw ConfigError("missing required field 'partition'");
    const Partition part = cfg.partition();
    const std::size_t N = part.size();
    if (cfg.maps.size() != N) {
        std::ostringstream msg;
        msg << "maps: got " << cfg.maps.size() << " entries, expected N = " << N;
        throw ConfigError(msg.str());
    }
    if (cfg.histogram.has_value() && cfg.histogram->size() != N) {
        std::ostringstream msg;
        msg << "histogram: got " << cfg.histogram->size() << " frequencies, expected N = " << N;
        throw ConfigError(msg.str());
    }
    if (cfg.solver.K < 8) throw ConfigError("solver.K: grid needs K >= 8");
    for (const auto& out : cfg.outputs) {
        static const char* known[] = {"function-csv", "attractor-csv", "report-json",
                                      "plot-svg",     "oscillation-csv", "riemann-csv"};
        bool ok = false;
        for (const char* k : known) ok = ok || out.type == k;
        if (!ok) throw ConfigError("outputs: unknown artifact type '" + out.type + "'");
        if (out.path.empty()) throw ConfigError("outputs: empty path for '" + out.type + "'");
    }

    // Admissibility gates at parse time. Solve mode validates the
    // histopolation bound; everything else validates the construction bound.
    const std::vector<double> zeros(N, 0.0);
    if (cfg.mode == RunMode::solve) {
        if (!cfg.histogram.has_value()) throw ConfigError("missing required field 'histogram' (solve mode)");
        cfg.system(SystemMode::histopolation, zeros);
    } else if (cfg.mode == RunMode::verify || cfg.mode == RunMode::attractor ||
               cfg.mode == RunMode::diagnose) {
        if (!cfg.has_offsets() && !cfg.histogram.has_value()) {
            throw ConfigError(mode_name(cfg.mode) +
                              " mode needs either maps[].d or a histogram to solve for them");
        }
        if (cfg.has_offsets() && !cfg.histogram.has_value()) {
            cfg.system(SystemMode::construction, zeros);
        } else {
            cfg.system(SystemMode::histopolation, zeros);
        }
    } else if (cfg.mode == RunMode::construct) {
        if (!cfg.has_offsets()) throw ConfigError("construct mode requires maps[].d");
        cfg.system(SystemMode::construction, zeros);
    } else {
        cfg.system(SystemMode::construction, zeros);
    }
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration document: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

    RunConfig cfg;
    cfg.schema = need(doc, "schema", "$").get<int>();
    if (cfg.schema != 1) {
        throw ConfigError("unsupported schema version " + std::to_string(cfg.schema));
    }
    cfg.mode = parse_mode(need(doc, "mode", "$").get<std::string>());
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();

    cfg.knots = need_number_array(need(doc, "partition", "$"), "partition");
    if (doc.contains("histogram")) cfg.histogram = need_number_array(doc["histogram"], "histogram");

    const ModulusSpec modulus = parse_modulus(need(doc, "modulus", "$"), "modulus");

    const json& maps = need(doc, "maps", "$");
    if (!maps.is_array()) throw ConfigError("maps: expected an array");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const std::string path = "maps[" + std::to_string(i) + "]";
        const json& m = maps[i];
        if (!m.is_object()) fail(path, "expected an object");
        MapSpec spec{need_number(m, "c", path), parse_scaling(need(m, "delta", path), path + ".delta"),
                     parse_contraction(need(m, "s", path), modulus, path + ".s"), std::nullopt};
        if (m.contains("d")) {
            if (!m["d"].is_number()) fail(path + ".d", "expected a number");
            spec.d = m["d"].get<double>();
        }
        cfg.maps.push_back(std::move(spec));
    }

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        if (!s.is_object()) throw ConfigError("solver: expected an object");
        if (s.contains("K")) cfg.solver.K = s["K"].get<std::size_t>();
        if (s.contains("tol_inner")) cfg.solver.tol_inner = s["tol_inner"].get<double>();
        if (s.contains("tol_outer")) cfg.solver.tol_outer = s["tol_outer"].get<double>();
        if (s.contains("max_outer")) cfg.solver.max_outer = s["max_outer"].get<long>();
        if (s.contains("max_inner")) cfg.solver.max_inner = s["max_inner"].get<long>();
        if (s.contains("area_tol")) cfg.solver.area_tol = s["area_tol"].get<double>();
        if (s.contains("interp")) {
            const std::string interp = s["interp"].get<std::string>();
            if (interp == "nearest-left") {
                cfg.solver.interp = InterpMode::nearest_left;
            } else if (interp == "linear") {
                cfg.solver.interp = InterpMode::linear;
            } else {
                throw ConfigError("solver.interp: unknown mode '" + interp +
                                  "' (known: nearest-left, linear)");
            }
        }
    }
    if (doc.contains("attractor")) {
        const json& a = doc["attractor"];
        if (a.contains("points")) cfg.attractor.points = a["points"].get<long>();
        if (a.contains("burn_in")) cfg.attractor.burn_in = a["burn_in"].get<long>();
    }
    if (doc.contains("check")) {
        const json& c = doc["check"];
        if (c.contains("range")) cfg.check.contraction_range = parse_interval(c["range"], "check.range");
        if (c.contains("modulus_range"))
            cfg.check.modulus_range = parse_interval(c["modulus_range"], "check.modulus_range");
        if (c.contains("samples")) cfg.check.samples = c["samples"].get<int>();
        if (c.contains("pairs")) cfg.check.pairs = c["pairs"].get<int>();
        if (c.contains("banach_k")) cfg.check.banach_k = need_number_array(c["banach_k"], "check.banach_k");
    }
    if (doc.contains("diagnose")) {
        const json& d = doc["diagnose"];
        if (d.contains("max_p")) cfg.diagnose.max_p = d["max_p"].get<int>();
        if (d.contains("K_list")) {
            cfg.diagnose.K_list.clear();
            for (const auto& k : d["K_list"]) cfg.diagnose.K_list.push_back(k.get<std::size_t>());
        }
    }
    if (doc.contains("verify")) {
        const json& v = doc["verify"];
        if (v.contains("residual_tol")) cfg.verify.residual_tol = v["residual_tol"].get<double>();
        if (v.contains("area_tol")) cfg.verify.area_tol = v["area_tol"].get<double>();
    }
    if (doc.contains("outputs")) {
        const json& outs = doc["outputs"];
        if (!outs.is_array()) throw ConfigError("outputs: expected an array");
        for (const auto& o : outs) {
            cfg.outputs.push_back({need(o, "type", "outputs").get<std::string>(),
                                   need(o, "path", "outputs").get<std::string>()});
        }
    }

    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw IoError("configuration file not found: " + path.string());
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open configuration file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const RunConfig& cfg) {
    json doc;
    doc["schema"] = cfg.schema;
    doc["mode"] = mode_name(cfg.mode);
    doc["seed"] = cfg.seed;
    doc["partition"] = cfg.knots;
    if (cfg.histogram.has_value()) doc["histogram"] = *cfg.histogram;

    const ModulusSpec& modulus = cfg.maps.front().s.modulus();
    json mj{{"kind", modulus.name()}};
    if (modulus.kind() == ModulusKind::linear) mj["k"] = modulus.param();
    doc["modulus"] = mj;

    json maps = json::array();
    for (const auto& m : cfg.maps) {
        json entry;
        entry["c"] = m.c;
        entry["delta"] = m.delta.kind() == ScalingKind::constant
                             ? json{{"kind", "constant"}, {"value", m.delta.param()}}
                             : json{{"kind", "linear-in-t"}, {"slope", m.delta.param()}};
        json s{{"kind", m.s.name()}};
        switch (m.s.kind()) {
            case ContractionKind::linear: s["k"] = m.s.param(); break;
            case ContractionKind::reciprocal: s["c"] = m.s.param(); break;
            default: s["a"] = m.s.param(); break;
        }
        entry["s"] = s;
        if (m.d.has_value()) entry["d"] = *m.d;
        maps.push_back(entry);
    }
    doc["maps"] = maps;

    doc["solver"] = {{"K", cfg.solver.K},
                     {"tol_inner", cfg.solver.tol_inner},
                     {"tol_outer", cfg.solver.tol_outer},
                     {"max_outer", cfg.solver.max_outer},
                     {"max_inner", cfg.solver.max_inner},
                     {"area_tol", cfg.solver.area_tol},
                     {"interp", cfg.solver.interp == InterpMode::nearest_left ? "nearest-left"
                                                                              : "linear"}};
    doc["attractor"] = {{"points", cfg.attractor.points}, {"burn_in", cfg.attractor.burn_in}};
    doc["check"] = {{"range", {cfg.check.contraction_range.lo, cfg.check.contraction_range.hi}},
                    {"modulus_range", {cfg.check.modulus_range.lo, cfg.check.modulus_range.hi}},
                    {"samples", cfg.check.samples},
                    {"pairs", cfg.check.pairs},
                    {"banach_k", cfg.check.banach_k}};
    doc["diagnose"] = {{"max_p", cfg.diagnose.max_p}, {"K_list", cfg.diagnose.K_list}};
    doc["verify"] = {{"residual_tol", cfg.verify.residual_tol}, {"area_tol", cfg.verify.area_tol}};
    json outs = json::array();
    for (const auto& o : cfg.outputs) outs.push_back({{"type", o.type}, {"path", o.path}});
    doc["outputs"] = outs;
    return doc.dump(2) + "\n";
}

}  // namespace fractalhisto
