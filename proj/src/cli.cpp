#include "qgf/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "qgf/config.hpp"
#include "qgf/constants.hpp"
#include "qgf/elliptic.hpp"
#include "qgf/errors.hpp"

namespace qgf {

using ojson = nlohmann::ordered_json;

namespace {

struct Context {
    const CliOptions& opts;
    std::optional<Config> config;
    std::optional<AlgebraSpec> spec;
    int grade = 4;
    int eps_order = 2;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::string backend = "exact";

    const AlgebraSpec& need_spec() const {
        if (!spec) throw ConfigParse("this command needs --config");
        return *spec;
    }
};

template <class F> void parallel_for(int count, int threads, F&& fn) {
    threads = std::min(threads, tbb::info::default_concurrency());
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    tbb::task_arena arena(threads);
    arena.execute([&] { tbb::parallel_for(0, count, [&](int i) { fn(i); }); });
}

std::string trunc_str(int grade, std::optional<int> eps_order = std::nullopt) {
    if (eps_order) return fmt::format("grade <= {}, eps^{}", grade, *eps_order);
    return fmt::format("grade <= {}", grade);
}

ojson cjson(cplx z) { return ojson::array({z.real(), z.imag()}); }

// Entry for an exact tensor residual. In the numeric backend the coefficients
// are evaluated at the configured point and compared with the tolerance.
ojson tensor_entry(const Context& ctx, const std::string& name, const Tensor& r,
                   const std::string& truncation) {
    ojson e;
    e["name"] = name;
    e["kind"] = "residual";
    e["backend"] = ctx.backend;
    e["truncation"] = truncation;
    e["terms"] = r.size();
    if (ctx.backend == "numeric") {
        double worst = 0;
        for (auto& [k, c] : r.terms())
            worst = std::max(worst, std::abs(eval_numeric(c, ctx.config->numeric_point)));
        e["value"] = worst;
        e["pass"] = worst <= ctx.tol;
    } else {
        e["value"] = r.is_zero() ? "exact zero" : fmt::format("{} nonzero terms", r.size());
        e["pass"] = r.is_zero();
    }
    return e;
}

ojson named_entry(const Context& ctx, const std::string& name,
                  const std::vector<NamedResidual>& nonzero, const std::string& truncation) {
    ojson e;
    e["name"] = name;
    e["kind"] = "residual";
    e["backend"] = ctx.backend;
    e["truncation"] = truncation;
    size_t terms = 0;
    double worst = 0;
    std::vector<std::string> failing;
    for (auto& r : nonzero) {
        double w = 0;
        if (ctx.backend == "numeric")
            for (auto& [k, c] : r.residual.terms())
                w = std::max(w, std::abs(eval_numeric(c, ctx.config->numeric_point)));
        if (ctx.backend == "exact" || w > ctx.tol) failing.push_back(r.name);
        terms += r.residual.size();
        worst = std::max(worst, w);
    }
    e["terms"] = terms;
    if (ctx.backend == "numeric")
        e["value"] = worst;
    else
        e["value"] = nonzero.empty() ? "exact zero" : fmt::format("{} nonzero terms", terms);
    e["pass"] = failing.empty();
    if (!failing.empty()) e["details"] = failing;
    return e;
}

ojson numeric_entry(const std::string& name, double value, double tol,
                    const std::string& truncation, bool pass) {
    ojson e;
    e["name"] = name;
    e["kind"] = "residual";
    e["backend"] = "numeric";
    e["truncation"] = truncation;
    e["value"] = value;
    e["tolerance"] = tol;
    e["pass"] = pass;
    return e;
}

ojson info_entry(const std::string& name, const std::string& value,
                 std::vector<std::string> details = {}) {
    ojson e;
    e["name"] = name;
    e["kind"] = "info";
    e["value"] = value;
    if (!details.empty()) e["details"] = details;
    return e;
}

// ---------------------------------------------------------------------------

ojson cmd_constants(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    ojson results = ojson::array();
    int found = 0;
    for (int size = 2; size <= ctx.grade; ++size)
        for (const Multiset& ms : multisets(spec.n(), size)) {
            auto cs = find_constants(spec, ms);
            if (cs.empty()) continue;
            std::vector<std::string> shown;
            bool ok = true;
            for (auto& c : cs) {
                shown.push_back(c.str(spec));
                ok = ok && is_constant(spec, c, false);
            }
            found += (int)cs.size();
            ojson e = info_entry("constants " + multiset_str(spec, ms),
                                 fmt::format("{} independent", cs.size()), shown);
            e["kind"] = "residual";
            e["backend"] = "exact";
            e["truncation"] = fmt::format("grade {}", size);
            e["pass"] = ok;
            results.push_back(e);
        }
    if (found == 0) results.push_back(info_entry("constants", "none on this surface"));
    return results;
}

ojson cmd_serre(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    ojson results = ojson::array();
    int kmax = ctx.opts.grade ? *ctx.opts.grade : std::max(1, std::min(ctx.grade, 3));
    for (int a = 0; a < spec.n(); ++a)
        for (int b = 0; b < spec.n(); ++b) {
            if (a == b) continue;
            for (int k = 1; k <= kmax; ++k) {
                std::string name = fmt::format("serre ({},{}) k={}", spec.labels()[a],
                                               spec.labels()[b], k);
                try {
                    SerreData d = serre_constant(spec, a, b, k, ctx.seed);
                    AlgebraSpec on = spec.with_surface(d.surface);
                    std::vector<std::string> details;
                    for (int m = 0; m <= k; ++m)
                        details.push_back(fmt::format("Q[{}] = {}", m, d.Q[m].str()));
                    for (auto& [v, img] : d.surface.assignments())
                        details.push_back(fmt::format("surface {} = {}", var_name(v), img.str()));
                    details.push_back("C = " + d.constant.str(on));
                    ojson e = info_entry(name, "annihilated by all lowering derivatives", details);
                    e["kind"] = "residual";
                    e["backend"] = "exact";
                    e["truncation"] = fmt::format("grade {}", k + 1);
                    e["pass"] = is_constant(on, d.constant, false);
                    if (!e["pass"].get<bool>()) e["value"] = "derivative residual nonzero";
                    results.push_back(e);
                } catch (const Error& err) {
                    results.push_back(info_entry(name, "skipped: " + err.kind()));
                }
            }
        }
    return results;
}

ojson cmd_rmatrix(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    TCoefficients t(spec, ctx.grade);
    ojson results = ojson::array();
    for (int size = 1; size <= ctx.grade; ++size)
        for (const Multiset& ms : multisets(spec.n(), size)) {
            const TSlice& s = t.slice(ms);
            std::vector<std::string> rows;
            for (size_t i = 0; i < s.words.size(); ++i)
                for (size_t j = 0; j < s.words.size(); ++j)
                    if (!s.t[i][j].is_zero())
                        rows.push_back(fmt::format("t^({})_({}) = {}", spec.word_str(s.words[j]),
                                                   spec.word_str(s.words[i]), s.t[i][j].str()));
            ojson e = info_entry("t " + multiset_str(spec, ms),
                                 fmt::format("{} words", s.words.size()), rows);
            e["pass"] = is_identity(matmul(s.S, s.t));
            e["kind"] = "residual";
            e["backend"] = "exact";
            e["truncation"] = fmt::format("grade {}", size);
            results.push_back(e);
        }
    return results;
}

ojson cmd_yb(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    TCoefficients t(spec, ctx.grade);
    t.body_upto(ctx.grade); // fills the slice cache before fanning out
    std::vector<std::pair<int, int>> tasks;
    for (int l = 0; l <= ctx.grade; ++l)
        for (int n = 0; n <= ctx.grade; ++n) tasks.push_back({l, n});
    std::vector<ojson> out(tasks.size());
    parallel_for((int)tasks.size(), ctx.opts.threads, [&](int i) {
        auto [l, n] = tasks[i];
        Tensor sum(3);
        for (auto& r : yb_grade_residual(t, l, n)) sum.add(r.residual);
        out[i] = tensor_entry(ctx, fmt::format("yang-baxter l={} n={}", l, n), sum,
                              trunc_str(ctx.grade));
    });
    return ojson(out);
}

ojson cmd_hopf(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    std::string tr = trunc_str(ctx.grade);
    ojson results = ojson::array();
    results.push_back(named_entry(ctx, "coproduct homomorphism",
                                  coproduct_homomorphism_residuals(spec), "generators"));
    results.push_back(named_entry(ctx, "antipode axiom", antipode_residuals(spec), "generators"));
    results.push_back(
        named_entry(ctx, "coassociativity", coassociativity_residuals(spec), "generators"));
    TCoefficients t(spec, ctx.grade);
    t.body_upto(ctx.grade);
    std::vector<Generator> gens;
    for (int g = 0; g < spec.n(); ++g) {
        gens.push_back({Generator::Plus, g});
        gens.push_back({Generator::Minus, g});
    }
    std::vector<ojson> out(gens.size());
    parallel_for((int)gens.size(), ctx.opts.threads, [&](int i) {
        const Generator& g = gens[i];
        std::string label = (g.kind == Generator::Plus ? "e_" : "e_-") + spec.labels()[g.index];
        out[i] = tensor_entry(ctx, "intertwiner " + label,
                              intertwiner_residual(t, g, ctx.grade), tr);
    });
    for (auto& e : out) results.push_back(e);
    return results;
}

std::string pair_label(const AlgebraSpec& spec, const DeformationPair& p) {
    return fmt::format("({},{}) {}", spec.labels()[p.sigma], spec.labels()[p.rho],
                       pair_type_name(p.type));
}

ojson cmd_deform(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    PairReport pr = admissible_pairs(spec);
    ojson results = ojson::array();
    std::vector<std::string> diag;
    for (auto& p : pr.diagnostics)
        for (auto& c : p.conditions)
            diag.push_back(fmt::format("{} {}: {}", pair_label(spec, p), c.name,
                                       c.holds ? "holds" : "fails"));
    results.push_back(info_entry("admissible pairs", std::to_string(pr.admissible.size()), diag));
    if (pr.admissible.empty()) return results;
    TCoefficients t(spec, ctx.grade + 1);
    for (auto& p : pr.admissible) {
        results.push_back(tensor_entry(ctx, "eps-linear yang-baxter " + pair_label(spec, p),
                                       eps_linear_yb_residual(t, p, ctx.grade),
                                       trunc_str(ctx.grade, 1)));
        results.push_back(named_entry(ctx, "eps-linear hopf axioms " + pair_label(spec, p),
                                      deformed_hopf_residuals(spec, p), "generators, eps^1"));
    }
    return results;
}

ojson series_entries(const Context& ctx, const std::string& name, const Series& s, int grade,
                     bool required) {
    ojson out = ojson::array();
    for (size_t k = 0; k < s.size(); ++k) {
        ojson e = tensor_entry(ctx, fmt::format("{} eps^{}", name, k), s[k],
                               trunc_str(grade, (int)k));
        if (!required) {
            e["kind"] = "info";
            e.erase("pass");
        }
        out.push_back(e);
    }
    return out;
}

ojson cmd_twist(const Context& ctx) {
    const AlgebraSpec& spec = ctx.need_spec();
    ojson results = ojson::array();
    int k = ctx.eps_order;
    if (ctx.config->tau) {
        TauMap tau = build_tau(*ctx.config, spec);
        Twist F = compound_twist(spec, tau, k);
        Series Fs = F.series(spec);
        for (auto& e : series_entries(ctx, "cocycle compound", cocycle_residual(spec, Fs, k),
                                      k, tau.disjoint()))
            results.push_back(e);
        if (!tau.disjoint())
            results.push_back(info_entry("cocycle compound",
                                         "domain and image overlap; residual reported only"));
        return results;
    }
    PairReport pr = admissible_pairs(spec);
    if (pr.admissible.empty())
        results.push_back(info_entry("admissible pairs", "0; nothing to twist"));
    for (auto& p : pr.admissible) {
        std::string label = pair_label(spec, p);
        Series Fs = elementary_twist(spec, p, k).series(spec);
        for (auto& e :
             series_entries(ctx, "cocycle elementary " + label, cocycle_residual(spec, Fs, k), k,
                            true))
            results.push_back(e);
        // eps-linear part of the twisted R equals -x_{rho rho} R1.
        int D = ctx.grade;
        TCoefficients t(spec, D + 1);
        Series TR = twist_R(t, Fs, D + 1, 1);
        Tensor r1(2);
        for (int g = 0; g <= D; ++g) r1.add(r1_piece(t, p, g));
        Tensor diff = TR[1] + r1.scaled(spec.x(p.rho, p.rho));
        auto keep = [D](const Tensor::Key& key) { return (int)key[0].minus.size() <= D; };
        results.push_back(tensor_entry(ctx, "twisted R eps^1 + x_rr R1 " + label,
                                       diff.filtered(keep), trunc_str(D, 1)));
    }
    return results;
}

ojson cmd_classical(const Context& ctx) {
    double eps = ctx.opts.eps.value_or(0.3);
    auto sl2 = sl_fundamental(2), sl3 = sl_fundamental(3);
    std::vector<ClassicalR> fams = {standard_r(sl2), standard_r(sl3), trig_family(sl2),
                                    trig_family(sl3), twisted_family(sl3, 2),
                                    esoteric_r(3, esoteric_shift(3), eps)};
    std::vector<ojson> out(fams.size());
    parallel_for((int)fams.size(), ctx.opts.threads, [&](int i) {
        auto pts = spectral_points(ctx.seed, 10, fams[i].threading,
                                   fams[i].family == Family::Twisted ? 2 : 1);
        double res = cybe_residual(fams[i], pts);
        out[i] = numeric_entry("cybe " + fams[i].name, res, ctx.tol, "10 seeded points",
                               res <= ctx.tol);
    });
    ojson results(out);
    std::vector<double> hbars = {1e-3, 1e-4};
    auto sl2_limit = classical_limit([](double h) { return sl2_standard_R(h, 2); },
                                     standard_r_matrix(sl2), hbars);
    double x = 0.02;
    auto trig_limit = classical_limit([x](double h) { return sl2_loop_R(h, x, 8); },
                                      trig_r(sl2, x), hbars);
    for (auto [name, rep] : {std::pair{"classical limit sl(2) standard", &sl2_limit},
                             std::pair{"classical limit sl(2) trigonometric x=0.02", &trig_limit}}) {
        double ratio = rep->ratio[0];
        ojson e = numeric_entry(name, ratio, 2.0, "grade 2 / grade 8, hbar 1e-3 -> 1e-4",
                                std::abs(ratio - 10.0) <= 2.0);
        e["errors"] = rep->error;
        results.push_back(e);
    }
    return results;
}

ojson cmd_elliptic(const Context& ctx) {
    cplx q = ctx.opts.q.value_or(0.8), eps = ctx.opts.eps.value_or(0.3);
    cplx u = ctx.opts.u.value_or(0.17);
    int M = ctx.opts.grade.value_or(0);
    EllipticParams p = EllipticParams::from_u(q, eps, u, M);
    EllipticR R = elliptic_R(p);
    ojson results = ojson::array();

    ojson vals;
    vals["name"] = "R_eps entries";
    vals["kind"] = "info";
    vals["truncation"] = fmt::format("M = {} factors", R.M);
    vals["a"] = cjson(R.entries.a);
    vals["b"] = cjson(R.entries.b);
    vals["c"] = cjson(R.entries.c);
    vals["d"] = cjson(R.entries.d);
    vals["ratios"] = ojson::array({cjson(R.ratios[0]), cjson(R.ratios[1]), cjson(R.ratios[2]),
                                   cjson(R.ratios[3])});
    results.push_back(vals);

    std::mt19937_64 gen(ctx.seed);
    std::uniform_real_distribution<double> re(0.05, 0.45), im(-0.05, 0.05);
    cplx v(re(gen), im(gen));
    auto R_of_u = [&](cplx w) { return elliptic_R(EllipticParams::from_u(q, eps, w, R.M)).R; };
    double ybe = ybe_residual(R_of_u, u, v);
    ojson e = numeric_entry("ybe_residual", ybe, ctx.tol,
                            fmt::format("M = {} factors, v = {}{:+}i", R.M, v.real(), v.imag()),
                            ybe <= ctx.tol);
    results.push_back(e);
    ojson sp = numeric_entry("eight-vertex sparsity", eight_vertex_sparse(R.R) ? 0.0 : 1.0, 0,
                             fmt::format("M = {} factors", R.M), eight_vertex_sparse(R.R));
    sp["value"] = eight_vertex_sparse(R.R) ? "exact" : "violated";
    results.push_back(sp);

    EllipticParams p0 = EllipticParams::from_u(q, 0.0, u);
    double red = (elliptic_R(p0).R - trig_quantum_R(q, p0.x, p0.sqrt_x)).norm();
    results.push_back(numeric_entry("eps = 0 reduction", red, 1e-13, "M = 1", red <= 1e-13));

    auto r10 = elliptic_classical_r(eps, 10), r20 = elliptic_classical_r(eps, 20);
    std::vector<std::pair<cplx, cplx>> pts = {{u, v}};
    double c10 = cybe_residual(r10, pts), c20 = cybe_residual(r20, pts);
    ojson ce = numeric_entry("elliptic classical r cybe, 20 terms", c20, ctx.tol,
                             "20 series terms", c20 <= ctx.tol);
    ce["ten_terms"] = c10;
    results.push_back(ce);
    return results;
}

ojson dispatch(const Context& ctx) {
    const std::string& c = ctx.opts.command;
    if (c == "constants") return cmd_constants(ctx);
    if (c == "serre") return cmd_serre(ctx);
    if (c == "rmatrix") return cmd_rmatrix(ctx);
    if (c == "yb-check") return cmd_yb(ctx);
    if (c == "hopf-check") return cmd_hopf(ctx);
    if (c == "deform") return cmd_deform(ctx);
    if (c == "twist") return cmd_twist(ctx);
    if (c == "classical") return cmd_classical(ctx);
    if (c == "elliptic") return cmd_elliptic(ctx);
    throw UnknownCommand(fmt::format("'{}'", c));
}

bool known_command(const std::string& c) {
    for (const char* k : {"constants", "serre", "rmatrix", "yb-check", "hopf-check", "deform",
                          "twist", "classical", "elliptic"})
        if (c == k) return true;
    return false;
}

ojson inputs_echo(const Context& ctx) {
    ojson in;
    in["config_path"] = ctx.opts.config_path ? ojson(*ctx.opts.config_path) : ojson(nullptr);
    if (ctx.config) in["config"] = ctx.config->echo();
    ojson flags;
    if (ctx.opts.grade) flags["grade"] = *ctx.opts.grade;
    if (ctx.opts.eps_order) flags["eps_order"] = *ctx.opts.eps_order;
    if (ctx.opts.tol) flags["tol"] = *ctx.opts.tol;
    if (ctx.opts.seed) flags["seed"] = *ctx.opts.seed;
    if (ctx.opts.eps) flags["eps"] = *ctx.opts.eps;
    if (ctx.opts.u) flags["u"] = *ctx.opts.u;
    if (ctx.opts.q) flags["q"] = *ctx.opts.q;
    in["flags"] = flags.is_null() ? ojson::object() : flags;
    return in;
}

} // namespace

int threads_from_env() {
    const char* s = std::getenv("QGF_THREADS");
    if (!s || !*s) return 1;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024)
        throw InvalidInput(fmt::format("QGF_THREADS='{}' is not a thread count", s));
    return (int)v;
}

RunResult run(const CliOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult rr;
    ojson& rep = rr.report;
    rep["command"] = opts.command;
    Context ctx{opts, std::nullopt, std::nullopt};
    try {
        if (!known_command(opts.command)) throw UnknownCommand(fmt::format("'{}'", opts.command));
        if (opts.out != "text" && opts.out != "json")
            throw InvalidInput("--out must be text or json");
        if (opts.config_path) {
            ctx.config = load_config(*opts.config_path);
            ctx.spec = build_spec(*ctx.config);
            ctx.grade = ctx.config->grade_cutoff;
            ctx.eps_order = ctx.config->eps_order;
            ctx.tol = ctx.config->tolerance;
            ctx.seed = ctx.config->seed;
            ctx.backend = ctx.config->backend;
        }
        if (opts.grade) ctx.grade = *opts.grade;
        if (opts.eps_order) ctx.eps_order = *opts.eps_order;
        if (opts.tol) ctx.tol = *opts.tol;
        if (opts.seed) ctx.seed = *opts.seed;
        if (ctx.grade < 0 || ctx.grade > 8) throw InvalidInput("--grade outside 0..8");
        if (ctx.eps_order < 0 || ctx.eps_order > 6) throw InvalidInput("--eps-order outside 0..6");
        if (!(ctx.tol > 0)) throw InvalidInput("--tol must be positive");
        rep["inputs"] = inputs_echo(ctx);
        bool numeric_only = opts.command == "classical" || opts.command == "elliptic";
        rep["backend"] = numeric_only ? "numeric" : ctx.backend;
        rep["truncation"] = opts.command == "elliptic"
                                ? ojson("|eps|^M < 1e-12 unless --grade sets M")
                            : numeric_only ? ojson("exact in the spectral parameter")
                            : opts.command == "twist" || opts.command == "deform"
                                ? ojson(trunc_str(ctx.grade, opts.command == "twist" ? ctx.eps_order : 1))
                                : ojson(trunc_str(ctx.grade));
        rep["results"] = dispatch(ctx);
        bool pass = true;
        for (auto& e : rep["results"])
            if (e.contains("pass") && !e["pass"].get<bool>()) pass = false;
        rep["status"] = pass ? "pass" : "fail";
        rr.exit_code = pass ? 0 : 1;
    } catch (const Error& e) {
        rep["status"] = "input error";
        rep["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        rr.exit_code = 2;
    }
    if (opts.timing)
        rep["timing_ms"] = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
    return rr;
}

std::string render(const ojson& report, const std::string& out) {
    if (out == "json") return report.dump(2) + "\n";
    std::ostringstream s;
    s << "command: " << report.value("command", "") << "\n";
    if (report.contains("error")) {
        s << "error: " << report["error"]["message"].get<std::string>() << "\n";
        s << "status: " << report["status"].get<std::string>() << "\n";
        return s.str();
    }
    s << "backend: " << report["backend"].get<std::string>() << "\n";
    s << "truncation: " << report["truncation"].get<std::string>() << "\n";
    for (auto& e : report["results"]) {
        std::string tag = !e.contains("pass") ? "info" : e["pass"].get<bool>() ? "pass" : "FAIL";
        std::string value = e["value"].is_string() ? e["value"].get<std::string>()
                            : e["value"].is_number() ? fmt::format("{:.3e}", e["value"].get<double>())
                                                     : "";
        s << "[" << tag << "] " << e["name"].get<std::string>();
        if (!value.empty()) s << ": " << value;
        if (e.contains("truncation"))
            s << "  (" << e["truncation"].get<std::string>()
              << (e.contains("backend") ? ", " + e["backend"].get<std::string>() : "") << ")";
        s << "\n";
        for (const char* key : {"a", "b", "c", "d"})
            if (e.contains(key))
                s << "    " << key << " = " << e[key][0].get<double>() << " "
                  << fmt::format("{:+}", e[key][1].get<double>()) << "i\n";
        if (e.contains("details"))
            for (auto& d : e["details"]) s << "    " << d.get<std::string>() << "\n";
    }
    s << "status: " << report["status"].get<std::string>() << "\n";
    if (report.contains("timing_ms"))
        s << fmt::format("timing: {:.1f} ms\n", report["timing_ms"].get<double>());
    return s.str();
}

} // namespace qgf
