#include "fractalhisto/run.hpp"

#include <cmath>
#include <json.hpp>
#include <optional>

#include "fractalhisto/attractor.hpp"
#include "fractalhisto/diagnostics.hpp"
#include "fractalhisto/errors.hpp"
#include "fractalhisto/io.hpp"
#include "fractalhisto/rb_operator.hpp"

namespace fractalhisto {

using nlohmann::json;

namespace {

std::optional<std::string> path_for(const RunConfig& cfg, const std::string& type) {
    for (const auto& out : cfg.outputs) {
        if (out.type == type) return out.path;
    }
    return std::nullopt;
}

std::vector<Point> decimate(const std::vector<Point>& pts, std::size_t cap) {
    if (pts.size() <= cap) return pts;
    std::vector<Point> out;
    out.reserve(cap);
    const double stride = static_cast<double>(pts.size()) / static_cast<double>(cap);
    for (std::size_t i = 0; i < cap; ++i) {
        out.push_back(pts[static_cast<std::size_t>(static_cast<double>(i) * stride)]);
    }
    return out;
}

json report_header(const RunConfig& cfg) {
    json rep;
    rep["schema"] = 1;
    rep["mode"] = mode_name(cfg.mode);
    rep["seed"] = cfg.seed;
    rep["config"] = json::parse(dump_config(cfg));
    return rep;
}

json trace_json(const ConvergenceError& e) {
    return json{{"iterations", e.iterations},
                {"last_residual", e.last_residual},
                {"sup_deltas", e.sup_deltas}};
}

RunResult finish(const RunConfig& cfg, json rep, int status) {
    rep["status"] = status == 0 ? "ok" : (status == 2 ? "non-convergence" : "failed");
    RunResult result{status, rep.dump(2) + "\n"};
    if (auto path = path_for(cfg, "report-json")) write_text_file(*path, result.report);
    return result;
}

void function_artifacts(const RunConfig& cfg, const SampledFunction& f) {
    if (auto path = path_for(cfg, "function-csv")) export_function_csv(f, *path);
    if (auto path = path_for(cfg, "plot-svg")) {
        emit_svg({{"f", decimate(graph_samples(f).points, 4096)}}, *path);
    }
}

// System for modes that accept either explicit offsets or a histogram to
// solve for them. Returns the solve summary when a solve happened.
struct ResolvedSystem {
    FractalSystem system;
    std::optional<HistopolationSolution> solution;
};

ResolvedSystem resolve_system(const RunConfig& cfg) {
    if (cfg.has_offsets()) {
        return {cfg.system(SystemMode::construction), std::nullopt};
    }
    HistopolationSolution sol = solve(cfg.problem());
    FractalSystem sys = sol.system;
    return {std::move(sys), std::move(sol)};
}

json run_check(const RunConfig& cfg, int& status) {
    const ModulusSpec& modulus = cfg.maps.front().s.modulus();
    json out;
    bool all_passed = true;

    const bool want_modulus =
        cfg.check.target == CheckTarget::all || cfg.check.target == CheckTarget::modulus;
    const bool want_contraction =
        cfg.check.target == CheckTarget::all || cfg.check.target == CheckTarget::contraction;
    const bool want_banach =
        cfg.check.target == CheckTarget::all || cfg.check.target == CheckTarget::banach_witness;

    auto report_json = [](const ContractionReport& rep) {
        json r{{"checked_pairs", rep.checked_pairs},
               {"max_violation", rep.max_violation},
               {"passed", rep.passed}};
        if (rep.witness) r["witness"] = {rep.witness->u, rep.witness->v};
        return r;
    };

    if (want_modulus) {
        const ContractionReport rep =
            verify_modulus(modulus, cfg.check.modulus_range, cfg.check.samples);
        out["modulus"] = report_json(rep);
        out["modulus"]["beta_analytic"] = modulus.beta();
        out["modulus"]["beta_estimate"] =
            estimate_beta(modulus, cfg.check.modulus_range, cfg.check.samples);
        all_passed = all_passed && rep.passed;
    }
    if (want_contraction) {
        json rows = json::array();
        for (std::size_t j = 0; j < cfg.maps.size(); ++j) {
            const ContractionReport rep =
                verify_contraction(cfg.maps[j].s, cfg.check.contraction_range, cfg.check.pairs,
                                   cfg.seed + j);
            json row = report_json(rep);
            row["map"] = j;
            row["kind"] = cfg.maps[j].s.name();
            rows.push_back(row);
            all_passed = all_passed && rep.passed;
        }
        out["contraction"] = rows;
    }
    if (want_banach) {
        json rows = json::array();
        for (std::size_t j = 0; j < cfg.maps.size(); ++j) {
            for (double k : cfg.check.banach_k) {
                const auto witness = banach_witness(cfg.maps[j].s, k, cfg.check.contraction_range,
                                                    cfg.check.samples);
                json row{{"map", j}, {"k", k}, {"found", witness.has_value()}};
                if (witness) row["witness"] = {witness->u, witness->v};
                rows.push_back(row);
            }
        }
        out["banach_witness"] = rows;
    }
    status = all_passed ? 0 : 1;
    return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    validate_config(cfg);
    json rep = report_header(cfg);

    switch (cfg.mode) {
        case RunMode::solve: {
            HistopolationProblem prob = cfg.problem();
            std::optional<HistopolationSolution> sol;
            try {
                sol.emplace(solve(prob));
            } catch (const ConvergenceError& e) {
                rep["error"] = e.what();
                rep["trace"] = trace_json(e);
                return finish(cfg, std::move(rep), 2);
            }
            json changes = json::array();
            for (const auto& step : sol->outer_trace) changes.push_back(step.max_change);
            rep["solve"] = {{"d", sol->system.d()},
                            {"outer_iterations", sol->outer_trace.size()},
                            {"inner_iterations_total", sol->inner_iterations_total},
                            {"outer_changes", changes},
                            {"rb_residual", residual(sol->system, sol->f)},
                            {"area_residuals", sol->area_residuals},
                            {"offset_residuals",
                             offset_residual(sol->system, sol->f, Histogram{*cfg.histogram})},
                            {"s_integrals", sol->s_integrals},
                            {"K", sol->f.cells()}};
            function_artifacts(cfg, sol->f);
            return finish(cfg, std::move(rep), 0);
        }

        case RunMode::construct: {
            FractalSystem sys = cfg.system(SystemMode::construction);
            SampledFunction init =
                make_sampled(sys.interval(), cfg.solver.K, 0.0, cfg.solver.interp);
            try {
                auto [f, trace] = fixed_point(sys, init, cfg.solver.tol_inner,
                                              cfg.solver.max_inner);
                rep["construct"] = {{"d", sys.d()},
                                    {"iterations", trace.iterations},
                                    {"final_sup_delta", trace.final_residual},
                                    {"rb_residual", residual(sys, f)},
                                    {"integral", integrate(f, f.lo, f.hi)},
                                    {"K", f.cells()}};
                function_artifacts(cfg, f);
            } catch (const ConvergenceError& e) {
                rep["error"] = e.what();
                rep["trace"] = trace_json(e);
                return finish(cfg, std::move(rep), 2);
            }
            return finish(cfg, std::move(rep), 0);
        }

        case RunMode::verify: {
            if (!cfg.function_csv.has_value()) {
                throw ArgumentError("verify mode needs a function CSV path");
            }
            SampledFunction f = import_function_csv(*cfg.function_csv, cfg.solver.interp);
            std::vector<double> d;
            if (cfg.has_offsets()) {
                d = cfg.offsets();
            } else {
                // recover the offsets the area condition dictates for this f
                HistopolationProblem prob = cfg.problem();
                FractalSystem probe = cfg.system(SystemMode::histopolation,
                                                 std::vector<double>(cfg.maps.size(), 0.0));
                std::vector<double> zero_res = offset_residual(probe, f, prob.histogram);
                d.resize(zero_res.size());
                for (std::size_t j = 0; j < d.size(); ++j) d[j] = -zero_res[j];
            }
            FractalSystem sys = cfg.system(SystemMode::construction, d);
            const double rb_res = residual(sys, f);
            bool passed = rb_res <= cfg.verify.residual_tol;
            rep["verify"] = {{"d", d}, {"rb_residual", rb_res},
                             {"residual_tol", cfg.verify.residual_tol}};
            if (cfg.histogram.has_value()) {
                HistopolationProblem prob = cfg.problem();
                const std::vector<double> areas = verify_areas(f, prob);
                rep["verify"]["area_residuals"] = areas;
                rep["verify"]["area_tol"] = cfg.verify.area_tol;
                rep["verify"]["offset_residuals"] = offset_residual(sys, f, prob.histogram);
                for (double r : areas) passed = passed && std::fabs(r) <= cfg.verify.area_tol;
            }
            rep["verify"]["passed"] = passed;
            return finish(cfg, std::move(rep), passed ? 0 : 1);
        }

        case RunMode::attractor: {
            std::optional<ResolvedSystem> resolved;
            try {
                resolved.emplace(resolve_system(cfg));
            } catch (const ConvergenceError& e) {
                rep["error"] = e.what();
                rep["trace"] = trace_json(e);
                return finish(cfg, std::move(rep), 2);
            }
            const FractalSystem& sys = resolved->system;
            PointCloud cloud = chaos_game(sys, cfg.attractor.points, cfg.attractor.burn_in,
                                          cfg.seed);
            rep["attractor"] = {{"points", cloud.points.size()},
                                {"burn_in", cfg.attractor.burn_in},
                                {"eta", eta(sys)},
                                {"d", sys.d()},
                                {"solved", resolved->solution.has_value()}};
            if (auto path = path_for(cfg, "attractor-csv")) export_cloud_csv(cloud, *path);
            if (auto path = path_for(cfg, "plot-svg")) {
                emit_svg({{"attractor", decimate(cloud.points, 20000)}}, *path);
            }
            return finish(cfg, std::move(rep), 0);
        }

        case RunMode::diagnose: {
            std::optional<ResolvedSystem> resolved;
            SampledFunction f;
            try {
                resolved.emplace(resolve_system(cfg));
                if (resolved->solution.has_value()) {
                    f = resolved->solution->f;
                } else {
                    SampledFunction init = make_sampled(resolved->system.interval(), cfg.solver.K,
                                                        0.0, cfg.solver.interp);
                    f = fixed_point(resolved->system, init, cfg.solver.tol_inner,
                                    cfg.solver.max_inner)
                            .first;
                }
            } catch (const ConvergenceError& e) {
                rep["error"] = e.what();
                rep["trace"] = trace_json(e);
                return finish(cfg, std::move(rep), 2);
            }
            const FractalSystem& sys = resolved->system;

            json diag;
            diag["d"] = sys.d();
            diag["delta_max"] = sys.delta_max();
            const std::vector<double> disc = discontinuity_points(sys.partition(), 4);
            diag["discontinuity_points_depth4"] = disc.size();

            if (sys.delta_max() < 1.0) {
                const auto rows = oscillation_vs_bound(sys, f, cfg.diagnose.max_p);
                double worst = 0.0;
                std::size_t exceed_count = 0;
                for (const auto& row : rows) {
                    worst = std::max(worst, row.exceedance);
                    if (row.exceedance > 0.0) ++exceed_count;
                }
                diag["oscillation"] = {{"max_p", cfg.diagnose.max_p},
                                       {"words", rows.size()},
                                       {"exceedances", exceed_count},
                                       {"worst_exceedance", worst}};
                if (auto path = path_for(cfg, "oscillation-csv")) {
                    std::string csv = "word,lo,hi,measured,bound,exceedance\n";
                    for (const auto& row : rows) {
                        std::string word;
                        for (std::size_t sym : row.word) word += std::to_string(sym + 1);
                        csv += word + ',' + format_full(row.lo) + ',' + format_full(row.hi) + ',' +
                               format_full(row.measured) + ',' + format_full(row.bound) + ',' +
                               format_full(row.exceedance) + '\n';
                    }
                    write_text_file(*path, csv);
                }
            } else {
                diag["oscillation"] = {{"inapplicable",
                                        "delta_max >= 1: the depth-p bound does not vanish"}};
            }

            const auto riemann = riemann_convergence(sys, cfg.diagnose.K_list,
                                                     cfg.solver.tol_inner, cfg.solver.max_inner);
            json rrows = json::array();
            for (std::size_t i = 0; i < riemann.size(); ++i) {
                json row{{"K", riemann[i].K}, {"integral", riemann[i].integral}};
                if (i > 0) row["delta"] = std::fabs(riemann[i].integral - riemann[i - 1].integral);
                rrows.push_back(row);
            }
            diag["riemann"] = rrows;
            if (auto path = path_for(cfg, "riemann-csv")) {
                std::string csv = "K,integral,delta\n";
                for (std::size_t i = 0; i < riemann.size(); ++i) {
                    csv += std::to_string(riemann[i].K) + ',' + format_full(riemann[i].integral) +
                           ',' +
                           (i > 0 ? format_full(std::fabs(riemann[i].integral -
                                                          riemann[i - 1].integral))
                                  : std::string("")) +
                           '\n';
                }
                write_text_file(*path, csv);
            }

            rep["diagnose"] = diag;
            function_artifacts(cfg, f);
            return finish(cfg, std::move(rep), 0);
        }

        case RunMode::check: {
            int status = 0;
            rep["check"] = run_check(cfg, status);
            return finish(cfg, std::move(rep), status);
        }
    }
    throw ArgumentError("unhandled mode");
}

}  // namespace fractalhisto
