// Command-line front end: expansions, Poincare series, quadratic-form
// identities, inner products, and the verification suites.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>

#include "phe/phe.hpp"
#include "phe/serialize.hpp"
#include "phe/verify.hpp"

using namespace phe;

namespace {

constexpr int EXIT_VERIFY_FAIL = 1;
constexpr int EXIT_BAD_INPUT = 2;
constexpr int EXIT_TOLERANCE = 3;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

/// Points are written as decimal literals "x+yi", e.g. "0.2+1.5i" or "i".
cplx parse_point(std::string s) {
    if (s.empty()) throw std::invalid_argument("empty point");
    double re = 0, im = 0;
    if (s.back() == 'i') {
        s.pop_back();
        size_t split = s.find_last_of("+-");
        if (split == std::string::npos || split == 0) {
            im = (s.empty() || s == "+" || s == "-") ? (s == "-" ? -1.0 : 1.0) : std::stod(s);
        } else {
            re = std::stod(s.substr(0, split));
            std::string rest = s.substr(split);
            im = (rest == "+" || rest == "-") ? (rest == "-" ? -1.0 : 1.0) : std::stod(rest);
        }
    } else {
        re = std::stod(s);
    }
    return {re, im};
}

GroupElement parse_matrix(const std::string& s) {
    long long a, b, c, d;
    if (std::sscanf(s.c_str(), "%lld,%lld;%lld,%lld", &a, &b, &c, &d) != 4)
        throw std::invalid_argument("matrix must be written a,b;c,d");
    GroupElement g{a, b, c, d};
    if (g.det() != 1) throw std::invalid_argument("matrix must have determinant 1");
    return g;
}

Fuchsian parse_group(const std::string& s) {
    if (s == "sl2z") return Fuchsian::sl2z();
    if (s.rfind("gamma0:", 0) == 0) return Fuchsian::gamma0(std::stoll(s.substr(7)));
    throw std::invalid_argument("group must be sl2z or gamma0:N");
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void emit(const Table& t, const std::string& format, const std::string& out_path) {
    std::string text;
    if (format == "json") {
        ojson j;
        ojson m = ojson::object();
        for (const auto& [k, v] : t.meta) m[k] = v;
        j["meta"] = m;
        ojson rows = ojson::array();
        for (const auto& r : t.rows) {
            ojson row = ojson::object();
            for (size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
            rows.push_back(row);
        }
        j["rows"] = rows;
        text = j.dump(2) + "\n";
    } else if (format == "csv") {
        for (const auto& [k, v] : t.meta) text += "# " + k + "=" + v + "\n";
        for (size_t i = 0; i < t.header.size(); ++i)
            text += t.header[i] + (i + 1 < t.header.size() ? "," : "\n");
        for (const auto& r : t.rows)
            for (size_t i = 0; i < r.size(); ++i) text += r[i] + (i + 1 < r.size() ? "," : "\n");
    } else {
        throw std::invalid_argument("format must be json or csv");
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << text;
    }
}

QExpansion load_form(const std::string& name, long long qorder) {
    if (name == "delta") return delta_qexp(qorder, 0.01);
    if (name == "eta11" || name == "newform11")
        return newform11_qexp(std::max(qorder, 4096LL), 1e-3);
    throw std::invalid_argument("form must be delta or eta11");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expansions and Poincare series of holomorphic cusp forms"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::string group_s = "sl2z", form_s = "delta", format = "csv", out_path, point_s = "i",
                matrix_s, hom_s = "plus", method_s = "taylor", suite_s = "all", at_s = "i";
    long long disc = 5, m = 1, m_max = 8, m_win = 8, coset_bound = 12, qorder = 256,
              lattice_bound = 90;
    int weight = 12, order = 1, quad_order = 48;
    double y_sample = 0.1, y_frac = 0.3, radius = 0.5, y_cap = 12.0, tol = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_s, "sl2z or gamma0:N");
        cmd->add_option("--format", format, "json or csv");
        cmd->add_option("--out", out_path, "write the table to a file");
        cmd->add_option("--qorder", qorder, "q-expansion truncation order");
    };

    auto* expand = app.add_subcommand("expand", "expansion coefficients of a form");
    std::string kind;
    expand->add_option("kind", kind, "par, hyp, or ell")->required();
    expand->add_option("--form", form_s, "delta or eta11");
    expand->add_option("--point", point_s, "elliptic point (i or rho)");
    expand->add_option("--disc", disc, "discriminant selecting the hyperbolic pair");
    expand->add_option("--matrix", matrix_s, "explicit hyperbolic matrix a,b;c,d");
    expand->add_option("--mmax", m_max, "largest index extracted");
    expand->add_option("--mwin", m_win, "symmetric index window (hyp)");
    expand->add_option("--y", y_sample, "sampling height (par)");
    expand->add_option("--y-frac", y_frac, "sampling height as a fraction of the strip (hyp)");
    expand->add_option("--radius", radius, "contour radius (ell)");
    expand->add_option("--method", method_s, "taylor or contour (ell)");
    add_common(expand);

    auto* poin = app.add_subcommand("poincare", "evaluate Poincare series at points");
    std::string pkind;
    poin->add_option("kind", pkind, "par, hyp, or ell")->required();
    poin->add_option("--order", order, "1 (plain) or 2 (twisted)");
    poin->add_option("--m", m, "seed index");
    poin->add_option("--weight", weight, "even weight >= 4");
    poin->add_option("--at", at_s, "comma-separated points x+yi");
    poin->add_option("--coset-bound", coset_bound, "truncation bound");
    poin->add_option("--disc", disc, "discriminant (hyp)");
    poin->add_option("--matrix", matrix_s, "explicit hyperbolic matrix (hyp)");
    poin->add_option("--point", point_s, "elliptic point (ell)");
    poin->add_option("--hom", hom_s, "plus, minus, or zero (order 2)");
    add_common(poin);

    auto* qf = app.add_subcommand("qform", "class data and series of a discriminant");
    qf->add_option("--disc", disc, "positive nonsquare discriminant")->required();
    qf->add_option("--weight", weight, "even weight >= 4");
    qf->add_option("--at", at_s, "evaluation point");
    qf->add_option("--coset-bound", coset_bound, "theta truncation");
    qf->add_option("--lattice-bound", lattice_bound, "lattice sum truncation");
    add_common(qf);

    auto* in = app.add_subcommand("inner", "Petersson inner product against a series");
    std::string ikind = "par";
    in->add_option("kind", ikind, "par or ell")->required();
    in->add_option("--m", m, "seed index");
    in->add_option("--weight", weight, "even weight");
    in->add_option("--coset-bound", coset_bound, "series truncation");
    in->add_option("--quad-order", quad_order, "quadrature order");
    in->add_option("--ycap", y_cap, "fundamental-domain truncation height");
    in->add_option("--tol", tol, "required relative agreement (exit 3 if missed)");
    add_common(in);

    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    ver->add_option("suite", suite_s, "identities, inner-products, qform, second-order, all");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_BAD_INPUT;
    }

    try {
        if (*expand) {
            QExpansion f = load_form(form_s, qorder);
            Fuchsian G = parse_group(group_s);
            ExpansionCoeffs ec{ExpTag::Par, {}, 0, 0};
            Table t;
            t.meta = {{"command", "expand"},
                      {"kind", kind},
                      {"form", f.label},
                      {"group", group_s},
                      {"qorder", std::to_string(f.order())}};
            if (kind == "par") {
                ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
                ec = parabolic_coeffs(f, datum, m_max, y_sample);
                t.meta.emplace_back("y", fmt(y_sample));
            } else if (kind == "hyp") {
                GroupElement g = matrix_s.empty() ? automorph(class_list(disc)[0].representative)
                                                  : parse_matrix(matrix_s);
                HyperbolicDatum datum = make_hyperbolic_datum(g);
                double H = pi / (2 * datum.log_xi);
                ec = hyperbolic_coeffs(f, datum, m_win, y_frac * H);
                t.meta.emplace_back("gamma", g.str());
                t.meta.emplace_back("xi", fmt(datum.xi));
            } else if (kind == "ell") {
                cplx z0 = point_s == "rho" ? std::exp(cplx(0, pi / 3)) : parse_point(point_s);
                EllipticDatum datum = make_elliptic_datum(PointH(z0), G);
                ec = method_s == "contour" ? elliptic_coeffs_contour(f, datum, m_max, radius)
                                           : elliptic_coeffs_taylor(f, datum, m_max);
                t.meta.emplace_back("point", point_s);
                t.meta.emplace_back("method", method_s);
                if (method_s == "contour") t.meta.emplace_back("radius", fmt(radius));
            } else {
                throw std::invalid_argument("expand kind must be par, hyp, or ell");
            }
            t.header = {"tag", "index", "re", "im"};
            for (const auto& [idx, v] : ec.entries)
                t.rows.push_back(
                    {tag_name(ec.tag), std::to_string(idx), fmt(v.real()), fmt(v.imag())});
            emit(t, format, out_path);
            return 0;
        }

        if (*poin) {
            Fuchsian G = parse_group(group_s);
            std::vector<cplx> pts;
            for (size_t pos = 0; pos < at_s.size();) {
                size_t comma = at_s.find(',', pos);
                if (comma == std::string::npos) comma = at_s.size();
                pts.push_back(parse_point(at_s.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            SeedFunction seed;
            CosetList cosets;
            GroupElement hyp_gamma;
            std::vector<std::pair<std::string, std::string>> extra_meta;
            if (pkind == "par") {
                ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
                seed = parabolic_seed(weight, m, datum);
                cosets = cosets_parabolic(G, datum, coset_bound);
            } else if (pkind == "hyp") {
                hyp_gamma = matrix_s.empty() ? automorph(class_list(disc)[0].representative)
                                             : parse_matrix(matrix_s);
                HyperbolicDatum datum = make_hyperbolic_datum(hyp_gamma);
                seed = hyperbolic_seed(weight, m, datum);
                cosets = cosets_hyperbolic(G, datum, coset_bound);
                extra_meta.emplace_back("gamma", hyp_gamma.str());
            } else if (pkind == "ell") {
                cplx z0 = point_s == "rho" ? std::exp(cplx(0, pi / 3)) : parse_point(point_s);
                EllipticDatum datum = make_elliptic_datum(PointH(z0), G);
                seed = elliptic_seed(weight, m, datum);
                cosets = cosets_elliptic(G, datum, coset_bound);
                extra_meta.emplace_back("point", point_s);
            } else {
                throw std::invalid_argument("poincare kind must be par, hyp, or ell");
            }
            Table t;
            t.meta = {{"command", "poincare"},
                      {"kind", pkind},
                      {"order", std::to_string(order)},
                      {"m", std::to_string(m)},
                      {"weight", std::to_string(weight)},
                      {"group", group_s},
                      {"coset_bound", std::to_string(coset_bound)}};
            for (auto& kv : extra_meta) t.meta.push_back(std::move(kv));
            t.header = {"re_z", "im_z", "re", "im", "last_shell"};
            std::unique_ptr<PeriodHom> L;
            if (order == 2) {
                if (G.level != 11 && hom_s != "zero")
                    throw std::invalid_argument(
                        "order 2 with a built-in homomorphism needs --group gamma0:11");
                QExpansion zero = QExpansion::zero(2, G.level);
                QExpansion fp = hom_s == "plus" ? newform11_qexp(8192, 5e-4) : zero;
                QExpansion fm = hom_s == "minus" ? newform11_qexp(8192, 5e-4) : zero;
                L = std::make_unique<PeriodHom>(fp, fm, G);
                t.meta.emplace_back("hom", hom_s);
            } else if (order != 1) {
                throw std::invalid_argument("order must be 1 or 2");
            }
            for (cplx z : pts) {
                SeriesValue v = order == 2
                                    ? relative_poincare_twisted(seed, L->as_fn_graded(), cosets, z)
                                    : relative_poincare(seed, cosets, z);
                t.rows.push_back({fmt(z.real()), fmt(z.imag()), fmt(v.value.real()),
                                  fmt(v.value.imag()), fmt(v.last_shell_mass)});
            }
            emit(t, format, out_path);
            return 0;
        }

        if (*qf) {
            cplx z = parse_point(at_s);
            auto classes = class_list(disc);
            Table t;
            t.meta = {{"command", "qform"},
                      {"disc", std::to_string(disc)},
                      {"h", std::to_string(classes.size())},
                      {"weight", std::to_string(weight)},
                      {"at", at_s}};
            t.header = {"class_rep", "cycle_len", "automorph", "theta_re", "theta_im", "F_re",
                        "F_im"};
            for (const auto& cl : classes) {
                GroupElement g = automorph(cl.representative);
                cplx th = theta_katok(z, weight, g, Fuchsian::sl2z(), coset_bound);
                cplx F = zagier_F(z, weight, disc, lattice_bound, &cl);
                char rep[64];
                std::snprintf(rep, sizeof rep, "(%lld;%lld;%lld)", cl.representative.a,
                              cl.representative.b, cl.representative.c);
                t.rows.push_back({rep, std::to_string(cl.cycle.size()), g.str(), fmt(th.real()),
                                  fmt(th.imag()), fmt(F.real()), fmt(F.imag())});
            }
            emit(t, format, out_path);
            return 0;
        }

        if (*in) {
            Fuchsian G = parse_group(group_s);
            QExpansion delta = delta_qexp(qorder);
            auto f = [&](cplx z) { return delta.eval(z); };
            cplx value;
            double target;
            if (ikind == "par") {
                ParabolicDatum datum = make_parabolic_datum(G, Cusp::infinity());
                SeedFunction seed = parabolic_seed(weight, m, datum);
                CosetList cosets = cosets_parabolic(G, datum, coset_bound);
                auto phi = [&](cplx z) { return relative_poincare(seed, cosets, z).value; };
                value = petersson_inner(f, phi, weight, y_cap, quad_order).value;
                target = double(delta_tau(m)[m]) * factorial(weight - 2) /
                         std::pow(4 * pi * m, weight - 1.0);
            } else if (ikind == "ell") {
                EllipticDatum datum = make_elliptic_datum(PointH(cplx(0, 1)), G);
                SeedFunction seed = elliptic_seed(weight, m, datum);
                CosetList cosets = cosets_elliptic(G, datum, coset_bound);
                auto phi = [&](cplx z) { return relative_poincare(seed, cosets, z).value; };
                value = petersson_inner(f, phi, weight, y_cap, quad_order).value;
                long long l = datum.order * m - weight / 2;
                cplx bm = elliptic_coeffs_taylor(delta, datum, l).value(l);
                target = (bm * pi * factorial(weight - 2) * factorial(int(l)) /
                          (std::pow(2.0, weight - 2) * double(datum.order) *
                           factorial(int(datum.order * m + weight / 2 - 1))))
                             .real();
            } else {
                throw std::invalid_argument("inner kind must be par or ell");
            }
            double resid = std::abs(value - target) / std::abs(target);
            Table t;
            t.meta = {{"command", "inner"},
                      {"kind", ikind},
                      {"m", std::to_string(m)},
                      {"weight", std::to_string(weight)},
                      {"coset_bound", std::to_string(coset_bound)}};
            t.header = {"computed_re", "computed_im", "closed_form", "rel_residual"};
            t.rows.push_back({fmt(value.real()), fmt(value.imag()), fmt(target), fmt(resid)});
            emit(t, format, out_path);
            if (tol > 0 && resid > tol) return EXIT_TOLERANCE;
            return 0;
        }

        if (*ver) {
            auto results = verify_suite(suite_s, VerifyConfig{});
            Table t;
            t.meta = {{"command", "verify"}, {"suite", suite_s}};
            t.header = {"check", "residual", "tolerance", "status", "seconds"};
            bool all_pass = true;
            for (const auto& r : results) {
                all_pass = all_pass && r.pass;
                t.rows.push_back({r.name, fmt(r.residual), fmt(r.tolerance),
                                  r.pass ? "pass" : "FAIL", fmt(r.seconds)});
            }
            emit(t, format, out_path);
            return all_pass ? 0 : EXIT_VERIFY_FAIL;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_TOLERANCE;
    }
    return 0;
}
