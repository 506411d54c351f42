#include "nlcg/config.hpp"

#include <fstream>

namespace nlcg {

namespace {

using nlohmann::json;

// Collects field-path diagnostics while walking the document.
struct Walker {
    std::vector<std::string> errors;

    double number(const json& j, const std::string& path, double fallback) {
        if (!j.contains(key(path))) return fallback;
        const auto& v = j.at(key(path));
        if (!v.is_number()) {
            errors.push_back(path + ": expected a number");
            return fallback;
        }
        return v.get<double>();
    }
    long integer(const json& j, const std::string& path, long fallback) {
        if (!j.contains(key(path))) return fallback;
        const auto& v = j.at(key(path));
        if (!v.is_number_integer()) {
            errors.push_back(path + ": expected an integer");
            return fallback;
        }
        return v.get<long>();
    }
    bool boolean(const json& j, const std::string& path, bool fallback) {
        if (!j.contains(key(path))) return fallback;
        const auto& v = j.at(key(path));
        if (!v.is_boolean()) {
            errors.push_back(path + ": expected a boolean");
            return fallback;
        }
        return v.get<bool>();
    }
    std::string text(const json& j, const std::string& path, const std::string& fallback) {
        if (!j.contains(key(path))) return fallback;
        const auto& v = j.at(key(path));
        if (!v.is_string()) {
            errors.push_back(path + ": expected a string");
            return fallback;
        }
        return v.get<std::string>();
    }

  private:
    static std::string key(const std::string& path) {
        const auto pos = path.rfind('.');
        return pos == std::string::npos ? path : path.substr(pos + 1);
    }
};

GaussianBump parse_bump(Walker& w, const json& j, const std::string& prefix) {
    GaussianBump b;
    b.amplitude = w.number(j, prefix + ".amplitude", b.amplitude);
    b.width = w.number(j, prefix + ".width", b.width);
    if (j.contains("center")) {
        const auto& c = j.at("center");
        if (!c.is_array() || c.size() != 3 || !c[0].is_number()) {
            w.errors.push_back(prefix + ".center: expected an array of 3 numbers");
        } else {
            for (int i = 0; i < 3; ++i) b.center[i] = c[i].get<double>();
        }
    }
    return b;
}

ProfileSpec parse_profile(Walker& w, const json& j) {
    ProfileSpec spec;
    const std::string type = w.text(j, "profile.type", "gaussian");
    if (type == "gaussian") {
        spec.shape = parse_bump(w, j, "profile");
    } else if (type == "constant") {
        spec.shape = ConstantProfile{w.number(j, "profile.value", 0.0)};
    } else if (type == "multi_bump") {
        MultiBumpProfile mb;
        if (!j.contains("bumps") || !j.at("bumps").is_array() || j.at("bumps").empty()) {
            w.errors.push_back("profile.bumps: multi_bump requires a non-empty array");
        } else {
            int idx = 0;
            for (const auto& bj : j.at("bumps")) {
                mb.bumps.push_back(parse_bump(w, bj, "profile.bumps[" + std::to_string(idx) + "]"));
                ++idx;
            }
        }
        spec.shape = mb;
    } else {
        w.errors.push_back("profile.type: unknown type '" + type +
                           "' (expected gaussian | constant | multi_bump)");
    }
    if (j.contains("perturbation")) {
        const auto& pj = j.at("perturbation");
        spec.perturbation.amplitude = w.number(pj, "profile.perturbation.amplitude", 0.0);
        spec.perturbation.seed =
            static_cast<std::uint64_t>(w.integer(pj, "profile.perturbation.seed", 0));
        spec.perturbation.modes = static_cast<int>(w.integer(pj, "profile.perturbation.modes", 2));
    }
    return spec;
}

Scheme parse_scheme(Walker& w, const json& j) {
    const std::string s = w.text(j, "solver.scheme", "imex2");
    if (s == "imex1") return Scheme::Imex1;
    if (s == "imex2") return Scheme::Imex2;
    if (s == "duhamel") return Scheme::Duhamel;
    w.errors.push_back("solver.scheme: unknown scheme '" + s + "' (expected imex1 | imex2 | duhamel)");
    return Scheme::Imex2;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
    Walker w;
    if (!doc.is_object()) throw ValidationError("config: top-level JSON object expected");

    ExperimentConfig cfg;
    if (!doc.contains("model") || !doc.at("model").is_object()) {
        w.errors.push_back("model: required object is missing");
    } else {
        const auto& m = doc.at("model");
        cfg.model.n = static_cast<int>(w.integer(m, "model.n", 3));
        cfg.model.sigma = w.number(m, "model.sigma", 1.0);
        cfg.model.alpha = w.number(m, "model.alpha", 2.0);
        cfg.model.beta = w.number(m, "model.beta", 2.0);
    }
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        cfg.grid.n_points = static_cast<int>(w.integer(g, "grid.points", cfg.grid.n_points));
        cfg.grid.length = w.number(g, "grid.length", cfg.grid.length);
    }
    cfg.model.domain_length = cfg.grid.length;

    if (doc.contains("profile")) cfg.profile = parse_profile(w, doc.at("profile"));
    else cfg.profile.shape = GaussianBump{};

    if (doc.contains("solver")) {
        const auto& s = doc.at("solver");
        auto& sc = cfg.solver;
        sc.dt_init = w.number(s, "solver.dt_init", sc.dt_init);
        sc.dt_min = w.number(s, "solver.dt_min", sc.dt_min);
        sc.cfl_safety = w.number(s, "solver.cfl_safety", sc.cfl_safety);
        sc.t_end = w.number(s, "solver.t_end", sc.t_end);
        sc.blowup_linf_factor = w.number(s, "solver.blowup_linf_factor", sc.blowup_linf_factor);
        sc.picard_tol = w.number(s, "solver.picard_tol", sc.picard_tol);
        sc.picard_max_iters = static_cast<int>(w.integer(s, "solver.picard_max_iters", sc.picard_max_iters));
        sc.scheme = parse_scheme(w, s);
        sc.adaptive_dt = w.boolean(s, "solver.adaptive_dt", sc.adaptive_dt);
        sc.max_steps = w.integer(s, "solver.max_steps", sc.max_steps);
    }
    if (doc.contains("outputs")) {
        const auto& o = doc.at("outputs");
        cfg.outputs.trace_path = w.text(o, "outputs.trace_path", cfg.outputs.trace_path);
        cfg.outputs.field_dump = w.boolean(o, "outputs.field_dump", cfg.outputs.field_dump);
        cfg.outputs.field_path = w.text(o, "outputs.field_path", cfg.outputs.field_path);
        cfg.outputs.report_path = w.text(o, "outputs.report_path", cfg.outputs.report_path);
    }

    // run the domain validators and fold their findings into the field-path list
    auto collect = [&](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            for (const auto& v : e.violations()) w.errors.push_back(v);
        }
    };
    collect([&] { cfg.model.validate(); });
    collect([&] { cfg.solver.validate(); });
    collect([&] { (void)make_grid(cfg.grid.n_points, cfg.grid.length); });
    collect([&] { (void)sample_profile(cfg.profile, make_grid(16, cfg.grid.length)); });

    if (!w.errors.empty()) throw ValidationError(std::move(w.errors));
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("config file not found: " + path);
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ValidationError("config: JSON parse error: " + std::string(e.what()));
    }
    return parse_experiment_config(doc);
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    json profile;
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantProfile>) {
                profile = {{"type", "constant"}, {"value", shape.value}};
            } else if constexpr (std::is_same_v<T, GaussianBump>) {
                profile = {{"type", "gaussian"},
                           {"amplitude", shape.amplitude},
                           {"width", shape.width},
                           {"center", shape.center}};
            } else {
                json bumps = json::array();
                for (const auto& b : shape.bumps)
                    bumps.push_back({{"amplitude", b.amplitude}, {"width", b.width}, {"center", b.center}});
                profile = {{"type", "multi_bump"}, {"bumps", bumps}};
            }
        },
        cfg.profile.shape);
    if (cfg.profile.perturbation.amplitude != 0.0) {
        profile["perturbation"] = {{"amplitude", cfg.profile.perturbation.amplitude},
                                   {"seed", cfg.profile.perturbation.seed},
                                   {"modes", cfg.profile.perturbation.modes}};
    }
    return json{
        {"model",
         {{"n", cfg.model.n}, {"sigma", cfg.model.sigma}, {"alpha", cfg.model.alpha},
          {"beta", cfg.model.beta}}},
        {"grid", {{"points", cfg.grid.n_points}, {"length", cfg.grid.length}}},
        {"profile", profile},
        {"solver",
         {{"dt_init", cfg.solver.dt_init}, {"dt_min", cfg.solver.dt_min},
          {"cfl_safety", cfg.solver.cfl_safety}, {"t_end", cfg.solver.t_end},
          {"blowup_linf_factor", cfg.solver.blowup_linf_factor},
          {"picard_tol", cfg.solver.picard_tol}, {"picard_max_iters", cfg.solver.picard_max_iters},
          {"scheme", to_string(cfg.solver.scheme)}, {"adaptive_dt", cfg.solver.adaptive_dt},
          {"max_steps", cfg.solver.max_steps}}},
        {"outputs",
         {{"trace_path", cfg.outputs.trace_path}, {"field_dump", cfg.outputs.field_dump},
          {"field_path", cfg.outputs.field_path}, {"report_path", cfg.outputs.report_path}}},
    };
}

}  // namespace nlcg
