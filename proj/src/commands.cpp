#include "gbdt/commands.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gbdt/catalog.hpp"
#include "gbdt/csv.hpp"
#include "gbdt/kdv.hpp"
#include "gbdt/matfun.hpp"
#include "gbdt/verify.hpp"

namespace gbdt::cli {

namespace {

// Leading constants of the finite-difference tolerance shapes
// max(floor, C * step^order * scale); calibrated on cases with known
// closed forms, then pinned.
constexpr double kCSchrodinger = 4.0;
constexpr double kCDynamic = 4.0;
constexpr double kCKdv = 20.0;

const char* mode_name(SMatrixEngine::Mode m) {
    return m == SMatrixEngine::Mode::closed_form ? "closed_form" : "quadrature";
}

void ensure_admissible(const Model& m, double tol) {
    const TripleResidual r = validate_triple(m.triple);
    if (!r.passes(tol))
        throw std::invalid_argument(
            "config: triple fails the admissibility identity (residual " + fmt(r.identity) +
            ", hermiticity " + fmt(r.hermiticity) + ", scale " + fmt(r.scale) + ")");
}

ComplexVector default_f0(Index h) {
    ComplexVector f0 = ComplexVector::Zero(2 * h);
    f0(0) = Complex(1.0, 0.0);
    return f0;
}

std::vector<std::string> vector_columns(const std::string& name, Index n) {
    std::vector<std::string> out;
    for (Index i = 0; i < n; ++i) {
        out.push_back(name + "_" + std::to_string(i) + ".re");
        out.push_back(name + "_" + std::to_string(i) + ".im");
    }
    return out;
}

void write_meta(CsvWriter& w, const std::string& command, const Model& m,
                const RunConfig& cfg) {
    w.comment("gbdt " + command + " n=" + std::to_string(m.triple.n()) +
              " h=" + std::to_string(m.triple.h()) + " mode=" + mode_name(m.engine.mode()) +
              " tol_identity=" + fmt(cfg.tol_identity) +
              " tol_residual=" + fmt(cfg.tol_residual) + " cond_tol=" + fmt(m.tol.cond_tol));
}

struct IdentitySweep {
    double max_rel = 0.0;
    double at_x = 0.0;
};

IdentitySweep sweep_identity(const Model& m, const GridSpec& grid) {
    IdentitySweep sweep;
    for (int i = 0; i < grid.count(); ++i) {
        const double x = grid.point(i);
        const LambdaPair lp = lambda_pair(m.dressing, x);
        const ComplexMatrix s = m.engine.at(x);
        const double rel =
            verify::identity_residual(m.triple.a, s, lp.lambda1, lp.lambda2) /
            verify::identity_scale(m.triple.a, s, lp.lambda1, lp.lambda2);
        if (rel > sweep.max_rel) {
            sweep.max_rel = rel;
            sweep.at_x = x;
        }
    }
    return sweep;
}

std::string report_line(const std::string& what, const verify::ResidualReport& rep,
                        double bound) {
    return what + ": max_residual=" + fmt(rep.max_residual) + " at x=" + fmt(rep.at_x) +
           (rep.at_t != 0.0 ? " t=" + fmt(rep.at_t) : "") + " bound=" + fmt(bound) +
           " evaluated=" + std::to_string(rep.evaluated) +
           " skipped=" + std::to_string(rep.skipped.size()) +
           (rep.max_residual <= bound && rep.evaluated > 0 ? " PASS" : " FAIL");
}

}  // namespace

Model resolve_model(const RunConfig& cfg) {
    const Tolerances tol = cfg.tolerances();
    Triple triple;
    Dressing dressing;
    if (cfg.preset == "ee2") {
        const ComplexMatrix s0 = cfg.s0.value_or(ComplexMatrix::Identity(1, 1));
        const ComplexMatrix th2 = cfg.theta2.value_or(ComplexMatrix::Identity(1, 1));
        const catalog::Ee2 preset{s0, th2};
        triple = preset.triple();
        dressing = cfg.q.has_value() ? make_dressing(triple, cfg.q, tol) : preset.dressing();
    } else if (cfg.preset == "ee3" || cfg.preset == "ee36") {
        const double c = cfg.preset == "ee36" ? 0.0 : cfg.c;
        const catalog::Ee3 preset{cfg.b, c, cfg.d};
        triple = preset.triple();
        dressing = cfg.q.has_value() ? make_dressing(triple, cfg.q, tol) : preset.dressing();
    } else if (cfg.preset.empty()) {
        if (!(cfg.a && cfg.s0 && cfg.theta1 && cfg.theta2))
            throw std::invalid_argument(
                "config: need a preset or all of A, S0, theta1, theta2");
        triple = Triple(*cfg.a, *cfg.s0, *cfg.theta1, *cfg.theta2);
        dressing = make_dressing(triple, cfg.q, tol);
    } else {
        throw std::invalid_argument("config: unknown preset '" + cfg.preset +
                                    "' (expected ee2, ee3 or ee36)");
    }
    SMatrixEngine engine = build_s_engine(dressing, tol);
    return Model{std::move(triple), std::move(dressing), std::move(engine), tol};
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const Model m = resolve_model(cfg);
    const TripleResidual r = validate_triple(m.triple);
    const bool ok = r.passes(cfg.tol_identity);
    out << "n = " << m.triple.n() << ", h = " << m.triple.h() << "\n";
    out << "identity residual = " << fmt(r.identity) << " (scale " << fmt(r.scale)
        << ", tol " << fmt(cfg.tol_identity) << "): " << (ok ? "PASS" : "FAIL") << "\n";
    out << "S0 hermiticity defect = " << fmt(r.hermiticity) << "\n";
    const ComplexVector eig = matfun::eigenvalues(m.triple.a);
    out << "spec(A) =";
    for (Index i = 0; i < eig.size(); ++i)
        out << " (" << fmt(eig(i).real()) << (eig(i).imag() < 0 ? "" : "+")
            << fmt(eig(i).imag()) << "i)";
    out << "\n";
    out << "root defect |Q*Q - A| = " << fmt((m.dressing.q * m.dressing.q - m.triple.a).norm())
        << "\n";
    out << "S-engine mode = " << mode_name(m.engine.mode()) << "\n";
    return ok ? kExitOk : kExitToleranceBreach;
}

int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const Model m = resolve_model(cfg);
    ensure_admissible(m, cfg.tol_identity);
    const Index h = m.triple.h();
    CsvWriter w(out);
    write_meta(w, "potential", m, cfg);
    std::vector<std::string> cols{"x"};
    for (auto& c : matrix_columns("u", h, h)) cols.push_back(c);
    w.row(cols);
    for (int i = 0; i < cfg.grid.count(); ++i) {
        const double x = cfg.grid.point(i);
        std::vector<std::string> cells{fmt(x)};
        try {
            push_matrix(cells, potential(m.dressing, m.engine, x, m.tol));
        } catch (const SingularS&) {
            push_singular(cells, h, h);
        }
        w.row(cells);
    }
    if (!cfg.verify) return kExitOk;
    const IdentitySweep sweep = sweep_identity(m, cfg.grid);
    const bool ok = sweep.max_rel <= cfg.tol_identity;
    w.comment("verify identity: max_rel=" + fmt(sweep.max_rel) + " at x=" + fmt(sweep.at_x) +
              " tol=" + fmt(cfg.tol_identity) + (ok ? " PASS" : " FAIL"));
    return ok ? kExitOk : kExitToleranceBreach;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Model m = resolve_model(cfg);
    ensure_admissible(m, cfg.tol_identity);
    const Index h = m.triple.h();
    const ComplexVector f0 = cfg.f0.has_value() ? *cfg.f0 : default_f0(h);
    CsvWriter w(out);
    write_meta(w, "solve", m, cfg);
    std::vector<std::string> cols{"lambda.re", "lambda.im", "x"};
    for (auto& c : vector_columns("y", h)) cols.push_back(c);
    w.row(cols);
    std::vector<std::pair<Complex, verify::ResidualReport>> reports;
    int produced = 0;
    for (const Complex lambda : cfg.lambdas) {
        const SolutionRequest req(lambda, f0);
        if (req.degenerate)
            err << "note: lambda = 0 collapses the free exponential pair\n";
        try {
            matfun::resolvent(m.triple.a, lambda, m.tol.eigen_tol);
        } catch (const SpectralPoint& e) {
            err << "skipping lambda = (" << fmt(lambda.real()) << ", " << fmt(lambda.imag())
                << "): " << e.what() << "\n";
            continue;
        }
        for (int i = 0; i < cfg.grid.count(); ++i) {
            const double x = cfg.grid.point(i);
            std::vector<std::string> cells{fmt(lambda.real()), fmt(lambda.imag()), fmt(x)};
            try {
                const ComplexVector y = transformed_solution(m.dressing, m.engine, req, x, m.tol);
                push_matrix(cells, y);
            } catch (const SingularS&) {
                push_singular(cells, h, 1);
            }
            w.row(cells);
        }
        ++produced;
        if (cfg.verify) {
            auto u_sampler = [&](double x) { return potential(m.dressing, m.engine, x, m.tol); };
            auto y_sampler = [&](double x) {
                return transformed_solution(m.dressing, m.engine, req, x, m.tol);
            };
            reports.emplace_back(lambda,
                                 verify::schrodinger_residual(u_sampler, y_sampler, lambda,
                                                              cfg.grid));
        }
    }
    if (produced == 0) {
        err << "error: every lambda was rejected\n";
        return kExitNumericFailure;
    }
    if (!cfg.verify) return kExitOk;
    bool all_ok = true;
    for (const auto& [lambda, rep] : reports) {
        const double bound = rep.bound(cfg.tol_residual, kCSchrodinger, cfg.grid.step, 4);
        const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
        all_ok = all_ok && ok;
        w.comment(report_line("verify schrodinger lambda=(" + fmt(lambda.real()) + "," +
                                  fmt(lambda.imag()) + ")",
                              rep, bound));
    }
    return all_ok ? kExitOk : kExitToleranceBreach;
}

int cmd_dynamic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const Model m = resolve_model(cfg);
    ensure_admissible(m, cfg.tol_identity);
    const Index n = m.triple.n();
    const Index h = m.triple.h();
    const int nx = cfg.grid.count();
    const int nt = cfg.tgrid.count();

    // Factor psi(x, t) = B(x) e^{-i t A}: B per x, propagator per t.
    std::vector<std::optional<ComplexMatrix>> bs(static_cast<size_t>(nx));
    std::vector<std::optional<ComplexMatrix>> us(static_cast<size_t>(nx));
    std::vector<double> rconds(static_cast<size_t>(nx), 0.0);
    for (int i = 0; i < nx; ++i) {
        const double x = cfg.grid.point(i);
        const ComplexMatrix s = m.engine.at(x);
        rconds[i] = matfun::rcond(s);
        if (rconds[i] < m.tol.cond_tol) continue;
        const LambdaPair lp = lambda_pair(m.dressing, x);
        bs[i] = ComplexMatrix(s.adjoint().partialPivLu().solve(lp.lambda2).adjoint());
        us[i] = detail::potential_from(lp.lambda1, lp.lambda2, s);
    }
    std::vector<ComplexMatrix> props(static_cast<size_t>(nt));
    for (int j = 0; j < nt; ++j)
        props[j] = matfun::expm(Complex(0.0, -1.0) * cfg.tgrid.point(j) * m.triple.a);

    CsvWriter w(out);
    write_meta(w, "dynamic", m, cfg);
    std::vector<std::string> cols{"t", "x"};
    for (auto& c : matrix_columns("psi", h, n)) cols.push_back(c);
    w.row(cols);
    for (int j = 0; j < nt; ++j) {
        for (int i = 0; i < nx; ++i) {
            std::vector<std::string> cells{fmt(cfg.tgrid.point(j)), fmt(cfg.grid.point(i))};
            if (bs[i])
                push_matrix(cells, ComplexMatrix(*bs[i] * props[j]));
            else
                push_singular(cells, h, n);
            w.row(cells);
        }
    }
    if (!cfg.verify) return kExitOk;

    auto index_of = [](const GridSpec& g, double v) {
        const int i = static_cast<int>(std::floor((v - g.start) / g.step + 0.5));
        return i;
    };
    auto u_sampler = [&](double x) -> ComplexMatrix {
        const int i = index_of(cfg.grid, x);
        if (!us[i]) throw SingularS(x, rconds[i]);
        return *us[i];
    };
    auto psi_sampler = [&](double x, double t) -> ComplexMatrix {
        const int i = index_of(cfg.grid, x);
        if (!bs[i]) throw SingularS(x, t, rconds[i]);
        return ComplexMatrix(*bs[i] * props[index_of(cfg.tgrid, t)]);
    };
    const verify::ResidualReport rep =
        verify::dynamic_residual(u_sampler, psi_sampler, cfg.grid, cfg.tgrid);
    const double bound = rep.bound(cfg.tol_residual, kCDynamic, cfg.tgrid.step, 2);
    const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
    w.comment(report_line("verify dynamic", rep, bound));
    return ok ? kExitOk : kExitToleranceBreach;
}

int cmd_kdv(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const Model m = resolve_model(cfg);
    ensure_admissible(m, cfg.tol_identity);
    const Index h = m.triple.h();
    const KdvDressing kd = make_kdv_dressing(m.dressing);
    const KdvField field = sample_kdv_field(kd, cfg.grid, cfg.tgrid, m.tol);
    CsvWriter w(out);
    write_meta(w, "kdv", m, cfg);
    std::vector<std::string> cols{"t", "x"};
    for (auto& c : matrix_columns("u", h, h)) cols.push_back(c);
    w.row(cols);
    for (int j = 0; j < cfg.tgrid.count(); ++j) {
        for (int i = 0; i < cfg.grid.count(); ++i) {
            std::vector<std::string> cells{fmt(cfg.tgrid.point(j)), fmt(cfg.grid.point(i))};
            const KdvSample& sample = field.at(i, j);
            if (sample.singular)
                push_singular(cells, h, h);
            else
                push_matrix(cells, sample.u);
            w.row(cells);
        }
    }
    if (!cfg.verify) return kExitOk;
    auto index_of = [](const GridSpec& g, double v) {
        return static_cast<int>(std::floor((v - g.start) / g.step + 0.5));
    };
    auto u_sampler = [&](double x, double t) -> ComplexMatrix {
        const KdvSample& sample = field.at(index_of(cfg.grid, x), index_of(cfg.tgrid, t));
        if (sample.singular) throw SingularS(x, t, sample.rcond);
        return sample.u;
    };
    const verify::ResidualReport rep = verify::kdv_residual(u_sampler, cfg.grid, cfg.tgrid);
    const double step = std::max(cfg.grid.step, cfg.tgrid.step);
    const double bound = rep.bound(10.0 * cfg.tol_residual, kCKdv, step, 2);
    const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
    w.comment(report_line("verify kdv", rep, bound));
    return ok ? kExitOk : kExitToleranceBreach;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const Model m = resolve_model(cfg);
    const Index h = m.triple.h();
    bool all_ok = true;

    const TripleResidual tr = validate_triple(m.triple);
    const bool adm = tr.passes(cfg.tol_identity);
    all_ok = all_ok && adm;
    out << "admissibility: residual=" << fmt(tr.identity) << " hermiticity="
        << fmt(tr.hermiticity) << " scale=" << fmt(tr.scale) << " tol="
        << fmt(cfg.tol_identity) << (adm ? " PASS" : " FAIL") << "\n";

    const IdentitySweep sweep = sweep_identity(m, cfg.grid);
    const bool idok = sweep.max_rel <= cfg.tol_identity;
    all_ok = all_ok && idok;
    out << "identity propagation: max_rel=" << fmt(sweep.max_rel) << " at x="
        << fmt(sweep.at_x) << " tol=" << fmt(cfg.tol_identity) << (idok ? " PASS" : " FAIL")
        << "\n";

    const ComplexVector f0 = cfg.f0.has_value() ? *cfg.f0 : default_f0(h);
    for (const Complex lambda : cfg.lambdas) {
        const SolutionRequest req(lambda, f0);
        try {
            matfun::resolvent(m.triple.a, lambda, m.tol.eigen_tol);
        } catch (const SpectralPoint& e) {
            out << "schrodinger lambda=(" << fmt(lambda.real()) << "," << fmt(lambda.imag())
                << "): SKIPPED (" << e.what() << ")\n";
            continue;
        }
        auto u_sampler = [&](double x) { return potential(m.dressing, m.engine, x, m.tol); };
        auto y_sampler = [&](double x) {
            return transformed_solution(m.dressing, m.engine, req, x, m.tol);
        };
        const verify::ResidualReport rep =
            verify::schrodinger_residual(u_sampler, y_sampler, lambda, cfg.grid);
        const double bound = rep.bound(cfg.tol_residual, kCSchrodinger, cfg.grid.step, 4);
        const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
        all_ok = all_ok && ok;
        out << report_line("schrodinger lambda=(" + fmt(lambda.real()) + "," +
                               fmt(lambda.imag()) + ")",
                           rep, bound)
            << "\n";
    }

    {
        auto u_sampler = [&](double x) { return potential(m.dressing, m.engine, x, m.tol); };
        auto psi_sampler = [&](double x, double t) {
            return dynamic_solution(m.dressing, m.engine, x, t, m.tol);
        };
        const verify::ResidualReport rep =
            verify::dynamic_residual(u_sampler, psi_sampler, cfg.grid, cfg.tgrid);
        const double bound = rep.bound(cfg.tol_residual, kCDynamic, cfg.tgrid.step, 2);
        const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
        all_ok = all_ok && ok;
        out << report_line("dynamic", rep, bound) << "\n";
    }

    {
        const KdvDressing kd = make_kdv_dressing(m.dressing);
        const KdvField field = sample_kdv_field(kd, cfg.grid, cfg.tgrid, m.tol);
        auto index_of = [](const GridSpec& g, double v) {
            return static_cast<int>(std::floor((v - g.start) / g.step + 0.5));
        };
        auto u_sampler = [&](double x, double t) -> ComplexMatrix {
            const KdvSample& sample = field.at(index_of(cfg.grid, x), index_of(cfg.tgrid, t));
            if (sample.singular) throw SingularS(x, t, sample.rcond);
            return sample.u;
        };
        const verify::ResidualReport rep = verify::kdv_residual(u_sampler, cfg.grid, cfg.tgrid);
        const double step = std::max(cfg.grid.step, cfg.tgrid.step);
        const double bound = rep.bound(10.0 * cfg.tol_residual, kCKdv, step, 2);
        const bool ok = rep.max_residual <= bound && rep.evaluated > 0;
        all_ok = all_ok && ok;
        out << report_line("kdv", rep, bound) << "\n";
    }

    out << "verify: " << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok ? kExitOk : kExitToleranceBreach;
}

int cmd_example(const std::string& id, std::ostream& out, std::ostream& err) {
    (void)err;
    out << preset_config_json(id);
    return kExitOk;
}

}  // namespace gbdt::cli
