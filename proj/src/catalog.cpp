#include "graded/catalog.hpp"

#include "graded/errors.hpp"
#include "graded/frames.hpp"
#include "graded/variation.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace graded {

using nlohmann::json;

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Published: return "published";
        case Provenance::Trivial: return "trivial";
        case Provenance::Derived: return "derived";
    }
    return "derived";
}

std::string to_string(Comparison c) {
    switch (c) {
        case Comparison::Equal: return "equal";
        case Comparison::AtMost: return "at_most";
        case Comparison::AtLeast: return "at_least";
        case Comparison::EqualUpToSign: return "equal_up_to_sign";
    }
    return "equal";
}

const CatalogCase& CatalogEntry::find_case(const std::string& case_name) const {
    for (const auto& c : cases)
        if (c.name == case_name) return c;
    std::ostringstream os;
    os << "entry '" << name << "' has no case '" << case_name << "'; cases:";
    for (const auto& c : cases) os << ' ' << c.name;
    throw LookupError(os.str());
}

namespace {

constexpr Comparison kEq = Comparison::Equal, kMax = Comparison::AtMost, kSign = Comparison::EqualUpToSign,
                     kMin = Comparison::AtLeast;
constexpr Provenance kPub = Provenance::Published, kTriv = Provenance::Trivial, kDer = Provenance::Derived;

Expectation expect(std::string analysis, std::string key, json value, double tol, Comparison cmp, Provenance prov,
                   std::string anchor) {
    return {std::move(analysis), std::move(key), std::move(value), tol, cmp, prov, std::move(anchor)};
}

Expectation exact(std::string analysis, std::string key, json value, Provenance prov, std::string anchor) {
    return expect(std::move(analysis), std::move(key), std::move(value), 0.0, kEq, prov, std::move(anchor));
}

Curve axis_line(const std::string& label, int dim, int axis, double a, double b) {
    std::vector<Polynomial> comps(dim, Polynomial({0}));
    comps[axis] = Polynomial({0, 1});
    return polynomial_curve(label, comps, a, b);
}

json zeros(int rows, int cols) { return json(std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0))); }

// Degree-one filtration check shared by every frame entry.
Expectation filtration_ok(const std::string& anchor) {
    return exact("degree", "filtration_ok", true, kTriv, anchor);
}

// Expectations describing a valid singular covector.
std::vector<Expectation> covector_valid(const std::string& anchor) {
    return {exact("covector", "exists", true, kPub, anchor),
            expect("covector", "ode_residual", 0.0, 1e-6, kMax, kDer, "singular covector solves its adjoint ODE"),
            expect("covector", "annihilation_residual", 0.0, 1e-6, kMax, kDer, "singular covector annihilates A"),
            expect("covector", "min_norm", 0.5, 0.0, kMin, kDer, "singular covector never vanishes")};
}

void append(std::vector<Expectation>& to, std::vector<Expectation> more) {
    for (auto& e : more) to.push_back(std::move(e));
}

CatalogEntry heisenberg_h1_entry() {
    CatalogEntry e{"heisenberg_h1", "first Heisenberg group, X = dx - (y/2)dt, Y = dy + (x/2)dt, T = dt",
                   "Heisenberg group examples", frames::heisenberg(1), std::nullopt, {}};
    const std::string reg = "Heisenberg regularity example: rank A(t) = 1 along horizontal curves";

    CatalogCase circle{"horizontal_circle",
                       Curve("horizontal circle", 0, 2 * M_PI,
                             [](double s) { return Vec((Vec(3) << std::cos(s), std::sin(s), 0.5 * s).finished()); },
                             [](double s) { return Vec((Vec(3) << -std::sin(s), std::cos(s), 0.5).finished()); }),
                       1, 0.0, 2 * M_PI,
                       {"degree", "length", "admissibility", "regularity", "covector", "geodesic", "variation"},
                       {}};
    circle.expectations = {
        filtration_ok("bracket-generating graded structure"),
        exact("degree", "curve_degree", 1, kTriv, "horizontal lift has degree one"),
        expect("length", "L_d", 2 * M_PI, 1e-9, kEq, kDer, "unit circle lift has L_1 = 2 pi"),
        expect("admissibility", "det_identity_error", 0.0, 1e-6, kMax, kPub, "det D = exp of the integral of tr B"),
        expect("admissibility", "holonomy_dual_path_max", 0.0, 1e-7, kMax, kPub, "integral holonomy formula"),
        exact("regularity", "classification", "REGULAR", kPub, reg),
        exact("regularity", "strongly_regular", true, kPub, reg),
        exact("regularity", "metric_unchanged", true, kPub, "regularity does not depend on the metric"),
        exact("covector", "exists", false, kPub, reg),
        expect("geodesic", "fitted_k", json::array({-1.0}), 1e-6, kEq, kDer,
               "counterclockwise unit circle: multiplier -1 in the J(X) = Y convention"),
        expect("geodesic", "max_residual", 0.0, 1e-5, kMax, kDer, "horizontal circles are Heisenberg geodesics"),
        expect("variation", "max_relative_error", 0.0, 1e-3, kMax, kDer, "first variation formula"),
    };
    e.cases.push_back(std::move(circle));

    CatalogCase vertical{"vertical_segment", axis_line("vertical segment", 3, 2, 0, 2), 2, 0.0, 2.0,
                         {"degree", "length", "geodesic"}, {}};
    vertical.expectations = {
        exact("degree", "curve_degree", 2, kTriv, "T has degree two"),
        expect("length", "L_d", 2.0, 1e-12, kEq, kTriv, "theta_2 = 1 on [0, 2]"),
        exact("geodesic", "max_residual", 0.0, kPub, "degree-two geodesics: straight lines in the T direction"),
    };
    e.cases.push_back(std::move(vertical));

    CatalogCase blowup{"blowup_segment",
                       polynomial_curve("blow-up segment", {Polynomial({0, 0.3}), Polynomial({0, 0, 0.2}), Polynomial({0, 1})}, 0, 1),
                       2, 0.0, 1.0, {"degree", "length", "blowup"}, {}};
    blowup.expectations = {
        exact("degree", "curve_degree", 2, kDer, "vertical coefficient 1 - 0.03 t^2 never vanishes"),
        expect("length", "L_d", 0.99, 1e-12, kEq, kDer, "integral of 1 - 0.03 t^2 over [0, 1]"),
        expect("blowup", "error_at_smallest_r", 0.0, 1e-3, kMax, kPub, "L_d as the limit of blown-up Riemannian lengths"),
        exact("blowup", "monotone", true, kDer, "blow-up error decreases with r"),
    };
    e.cases.push_back(std::move(blowup));

    CatalogCase cubic{"cubic", polynomial_curve("cubic", {Polynomial({0, 1}), Polynomial({0, 0, 1}), Polynomial({0, 0, 0, 1})}, -1, 1),
                      2, -1.0, 1.0, {"degree"}, {}};
    cubic.expectations = {
        exact("degree", "curve_degree", 2, kDer, "degree is the maximum pointwise degree"),
        expect("degree", "singular_t", json::array({0.0}), 1e-12, kEq, kDer, "vertical coefficient 5t^2/2 vanishes only at 0"),
    };
    e.cases.push_back(std::move(cubic));

    for (double k : {0.0, 0.5, -0.5, 2.0, -2.0}) {
        std::ostringstream name;
        name << "geodesic_k" << k;
        CatalogCase g{name.str(),
                      heisenberg_geodesic(k, (Vec(3) << 0.1, -0.2, 0.3).finished(), (Vec(2) << 0.6, 0.8).finished(), 2.0),
                      1, 0.0, 2.0, {"regularity", "geodesic"}, {}};
        g.expectations = {
            exact("regularity", "classification", "REGULAR", kPub, reg),
            expect("geodesic", "fitted_k", json::array({2 * k}), 1e-6, kEq, kDer, "round trip: fitted multiplier 2k"),
            expect("geodesic", "max_residual", 0.0, 1e-5, kMax, kDer, "round trip of the geodesic equation"),
        };
        e.cases.push_back(std::move(g));
    }
    return e;
}

CatalogEntry heisenberg_hn_entry(int n) {
    CatalogEntry e{n == 1 ? "heisenberg_hn(1)" : "heisenberg_hn(" + std::to_string(n) + ")",
                   "Heisenberg group H^n, X_i = dx_i - (y_i/2)dt, Y_i = dy_i + (x_i/2)dt", "Heisenberg group examples",
                   frames::heisenberg(n), std::nullopt, {}};
    CatalogCase line{"x1_line", axis_line("x1 line", 2 * n + 1, 0, 0, 1), 1, 0.0, 1.0,
                     {"degree", "admissibility", "regularity", "covector"}, {}};
    line.expectations = {
        filtration_ok("bracket-generating graded structure"),
        exact("degree", "curve_degree", 1, kTriv, "X_1 has degree one"),
        expect("admissibility", "holonomy_dual_path_max", 0.0, 1e-7, kMax, kPub, "integral holonomy formula"),
        exact("regularity", "classification", "REGULAR", kPub, "Heisenberg regularity example"),
        exact("regularity", "strongly_regular", true, kPub, "Heisenberg regularity example"),
        exact("covector", "exists", false, kPub, "Heisenberg regularity example"),
    };
    e.cases.push_back(std::move(line));
    return e;
}

CatalogEntry heisenberg_contact_entry() {
    CatalogEntry e{"heisenberg_contact_h1", "Heisenberg group in contact form, X = dx + y dt, Y = dy - x dt, T = dt",
                   "contact manifold example", frames::heisenberg_contact(), std::nullopt, {}};
    CatalogCase circle{"horizontal_circle",
                       Curve("contact circle", 0, 2 * M_PI,
                             [](double s) { return Vec((Vec(3) << std::cos(s), std::sin(s), -s).finished()); },
                             [](double s) { return Vec((Vec(3) << -std::sin(s), std::cos(s), -1.0).finished()); }),
                       1, 0.0, 2 * M_PI, {"degree", "admissibility", "regularity", "geodesic"}, {}};
    circle.expectations = {
        filtration_ok("bracket-generating graded structure"),
        exact("degree", "curve_degree", 1, kTriv, "horizontal lift has degree one"),
        expect("admissibility", "A_start", json::array({json::array({2.0, 0.0})}), 1e-10, kEq, kDer,
               "A = (2 h_2, -2 h_1) since [X, Y] = -2T"),
        exact("regularity", "classification", "REGULAR", kPub, "contact regularity example: rank A(t) = 1"),
        exact("regularity", "strongly_regular", true, kPub, "contact regularity example: rank A(t) = 1"),
        expect("geodesic", "fitted_k", json::array({0.5}), 1e-6, kEq, kDer, "unit circle multiplier in the contact frame"),
        expect("geodesic", "max_residual", 0.0, 1e-5, kMax, kDer, "horizontal circles are geodesics"),
    };
    e.cases.push_back(std::move(circle));
    return e;
}

CatalogEntry engel_entry() {
    const std::string anchor = "Engel structure example: the x_2-line is non-regular on every subinterval";
    CatalogEntry e{"engel", "Engel structure on R^4, X_2 = dx_2 + x_1 dx_3 + (x_1^2/2) dx_4", anchor, frames::engel(),
                   std::nullopt, {}};
    for (auto [name, a, b] : {std::tuple{"x2_line", 0.0, 1.0}, std::tuple{"x2_line_subinterval", 0.25, 0.5}}) {
        CatalogCase c{name, axis_line("x2 line", 4, 1, 0, 1), 1, a, b,
                      {"degree", "admissibility", "regularity", "covector"}, {}};
        c.expectations = {
            filtration_ok("Engel growth vector (2, 3, 4)"),
            exact("degree", "curve_degree", 1, kPub, anchor),
            expect("admissibility", "A_start", json::array({json::array({-1.0, 0.0}), json::array({0.0, 0.0})}), 1e-10,
                   kEq, kPub, anchor),
            expect("admissibility", "B_start", zeros(2, 2), 1e-10, kEq, kPub, anchor),
            expect("admissibility", "holonomy_dual_path_max", 0.0, 1e-7, kMax, kPub, "integral holonomy formula"),
            exact("regularity", "classification", "SINGULAR", kPub, anchor),
            exact("regularity", "gram_rank", 1, kDer, "Gram matrix diag(b - a, 0)"),
            exact("regularity", "metric_unchanged", true, kPub, "regularity does not depend on the metric"),
            expect("covector", "gamma", json::array({0.0, 1.0}), 1e-9, kSign, kDer, "Lambda = (0, 1) since B = 0"),
        };
        append(c.expectations, covector_valid(anchor));
        e.cases.push_back(std::move(c));
    }
    return e;
}

CatalogEntry r5_degree2_entry() {
    const std::string anchor = "R^5 degree-two example: A is not linearly full";
    CatalogEntry e{"r5_degree2", "R^5 with growth (2, 3, 4, 5), X_2 = dx_5 + x_1 dx_2 + (x_1^2/2) dx_3 + (x_1^3/6) dx_4",
                   anchor, frames::r5_degree2(), std::nullopt, {}};
    CatalogCase c{"x2_line", axis_line("x2 line", 5, 1, 0, 1), 2, 0.0, 1.0,
                  {"degree", "admissibility", "regularity", "covector"}, {}};
    c.expectations = {
        filtration_ok("growth vector (2, 3, 4, 5)"),
        exact("degree", "curve_degree", 2, kPub, "the x_2-line is a curve of degree two"),
        expect("admissibility", "A_start",
               json::array({json::array({-1.0, 0.0, 0.0}), json::array({0.0, 0.0, 0.0})}), 1e-10, kEq, kDer,
               "only [X_3, X_1] reaches the vertical space"),
        expect("admissibility", "B_start", zeros(2, 2), 1e-10, kEq, kDer, "X_3 commutes with the vertical fields"),
        exact("regularity", "classification", "SINGULAR", kPub, anchor),
        exact("regularity", "gram_rank", 1, kDer, "Gram matrix diag(1, 0)"),
        expect("covector", "gamma", json::array({0.0, 1.0}), 1e-9, kSign, kDer, "Lambda = (0, 1)"),
    };
    append(c.expectations, covector_valid(anchor));
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry r5_rank3_entry() {
    const std::string anchor = "R^5 rank-three example: F(b) = 0 for every control";
    CatalogEntry e{"r5_rank3", "R^5 with a rank-three distribution and central X_3 = dx_5", anchor, frames::r5_rank3(),
                   std::nullopt, {}};
    CatalogCase c{"x5_line", axis_line("x5 line", 5, 4, 0, 1), 1, 0.0, 1.0,
                  {"degree", "admissibility", "regularity", "covector"}, {}};
    c.expectations = {
        filtration_ok("growth vector (3, 4, 5)"),
        exact("degree", "curve_degree", 1, kTriv, "X_3 has degree one"),
        expect("admissibility", "A_start", zeros(2, 3), 1e-12, kEq, kPub, anchor),
        expect("admissibility", "B_start", zeros(2, 2), 1e-12, kEq, kPub, anchor),
        expect("admissibility", "holonomy_max", 0.0, 1e-14, kMax, kPub, anchor),
        exact("regularity", "classification", "SINGULAR", kPub, anchor),
        exact("regularity", "gram_rank", 0, kPub, anchor),
    };
    append(c.expectations, covector_valid(anchor));
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry kolmogorov_entry() {
    const std::string anchor = "Kolmogorov example: (0, 0, 0, s) is singular of degree two";
    CatalogEntry e{"kolmogorov", "Kolmogorov structure on (x, y, z, t), X_2 = dt + x dy + (x^2/2) dz", anchor,
                   frames::kolmogorov(), std::nullopt, {}};
    CatalogCase c{"t_line", axis_line("t line", 4, 3, 0, 1), 2, 0.0, 1.0,
                  {"degree", "admissibility", "regularity", "covector"}, {}};
    c.expectations = {
        filtration_ok("growth vector (1, 2, 3, 4), homogeneous of degree two"),
        exact("degree", "curve_degree", 2, kPub, anchor),
        expect("admissibility", "A_start", json::array({json::array({-1.0, 0.0}), json::array({0.0, 0.0})}), 1e-10,
               kEq, kDer, "[X_2, X_1] = -X_3"),
        exact("regularity", "classification", "SINGULAR", kPub, anchor),
        expect("covector", "gamma", json::array({0.0, 1.0}), 1e-9, kSign, kDer, "Lambda = (0, 1)"),
    };
    append(c.expectations, covector_valid(anchor));
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry euclidean_split_entry(int n, int k) {
    const std::string anchor = "Euclidean split remark: each horizontal curve is singular";
    CatalogEntry e{"euclidean_split(" + std::to_string(n) + "," + std::to_string(k) + ")",
                   "abelian coordinate frame of R^n with first layer of rank k", anchor, frames::euclidean_split(n, k),
                   std::nullopt, {}};
    std::vector<Polynomial> bent(n, Polynomial({0}));
    bent[0] = Polynomial({0, 1});
    if (k >= 2) bent[1] = Polynomial({0, 0, 1});
    CatalogCase c{"bent_curve", polynomial_curve("bent curve", bent, 0, 1), 1, 0.0, 1.0,
                  {"degree", "admissibility", "regularity", "covector"}, {}};
    c.expectations = {
        filtration_ok("abelian frame"),
        exact("degree", "curve_degree", 1, kTriv, "velocity lies in the first layer"),
        expect("admissibility", "A_start", zeros(n - k, k), 0.0, kEq, kPub, anchor),
        expect("admissibility", "B_start", zeros(n - k, n - k), 0.0, kEq, kPub, anchor),
    };
    if (k < n) {
        c.expectations.push_back(exact("regularity", "classification", "SINGULAR", kPub, anchor));
        c.expectations.push_back(exact("regularity", "gram_rank", 0, kPub, anchor));
        append(c.expectations, covector_valid(anchor));
    }
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry vertical_plane_entry() {
    const std::string anchor = "vertical plane example: the two-segment path minimizes L_2";
    Surface s = vertical_plane();
    CatalogEntry e{"h1_vertical_plane", "vertical plane {y = 0} in H^1 with Z = X and S = T", anchor, *s.chart_frame, s,
                   {}};
    CatalogCase c{"t_segment", axis_line("t segment", 2, 1, 0, 5), 2, 0.0, 5.0,
                  {"degree", "length", "variation", "limits"}, {}};
    c.expectations = {
        exact("degree", "curve_degree", 2, kTriv, "S has degree two"),
        expect("length", "L_d", 5.0, 1e-12, kEq, kPub, "L_2 of the vertical segment is |t_1 - t_0|"),
        expect("variation", "max_H", 0.0, 1e-12, kMax, kDer, "integral curves of S are critical"),
        expect("limits", "bracket", 0.0, 1e-8, kMax, kDer, "<[Z, S], S> = 0 on the vertical plane"),
        exact("limits", "every_curve_critical", true, kPub, "every S-curve of the vertical plane is critical"),
        expect("limits", "two_segment_length", 5.0, 1e-12, kEq, kPub, anchor),
        exact("limits", "violations", 0, kPub, anchor),
        expect("limits", "min_competitor", 5.0, 1e-9, kMin, kDer, "random spline competitors are not shorter"),
    };
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry characteristic_plane_entry() {
    const std::string anchor = "characteristic plane example: S-curves collapse to the characteristic point, limit 2 pi";
    Surface s = characteristic_plane();
    CatalogEntry e{"h1_characteristic_plane", "plane {t = 0} in H^1 in cylindrical coordinates (rho, theta)", anchor,
                   *s.chart_frame, s, {}};
    CatalogCase c{"radial_chart_curve",
                  polynomial_curve("radial chart curve", {Polynomial({1, 0.3}), Polynomial({0, 1})}, 0, 1), 2, 0.0,
                  1.0, {"degree", "length", "variation", "limits"}, {}};
    c.expectations = {
        exact("degree", "curve_degree", 2, kTriv, "the theta direction has degree two"),
        expect("variation", "max_relative_error", 0.0, 1e-3, kMax, kDer,
               "finite-difference first variation matches the H pairing"),
        expect("limits", "length_rho_1", 2 * M_PI / std::sqrt(1.25), 1e-6, kEq, kDer, "closed form 2 pi / sqrt(1 + rho^2/4)"),
        expect("limits", "length_rho_2", 2 * M_PI / std::sqrt(2.0), 1e-6, kEq, kDer, "closed form 2 pi / sqrt(1 + rho^2/4)"),
        expect("limits", "limit", 2 * M_PI, 1e-3, kEq, kPub, anchor),
        expect("limits", "bracket_rho_1", -1.2, 1e-6, kEq, kDer,
               "<[Z, S], S> = -(1 + rho^2/2) / (rho (1 + rho^2/4))"),
    };
    e.cases.push_back(std::move(c));
    return e;
}

CatalogEntry pansu_entry() {
    const std::string anchor = "Pansu sphere example: the geodesic meets the equator at parameter pi/4";
    Surface s = pansu_sphere();
    CatalogEntry e{"pansu_sphere", "upper hemisphere of the Pansu sphere in H^1, chart (rho, theta)", anchor,
                   s.ambient, s, {}};
    const double closed = M_PI / 4 - 0.5 * (0.5 * std::sqrt(0.75) + std::asin(0.5));
    CatalogCase c{"meridian", std::nullopt, 1, 0.0, 1.0, {"limits"}, {}};
    c.expectations = {
        expect("limits", "s_bar", M_PI / 4, 1e-3, kEq, kPub, anchor),
        expect("limits", "two_s_bar", M_PI / 2, 1e-3, kEq, kPub, anchor),
        expect("limits", "s_bar_rho_half", closed, 1e-6, kEq, kDer, "closed-form antiderivative of sqrt(1 - y^2)"),
        exact("limits", "t_decreasing", true, kPub, "t decreases along geodesics of the upper hemisphere"),
        expect("limits", "bracket_rho_half", 0.25 * std::pow(0.75, -1.5), 1e-5, kEq, kDer,
               "<[Z, S], S> = rho^2 (1 - rho^2)^(-3/2)"),
    };
    e.cases.push_back(std::move(c));
    return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"heisenberg_h1",     "heisenberg_hn(2)", "heisenberg_contact_h1",   "engel",
            "r5_degree2",        "r5_rank3",         "kolmogorov",              "euclidean_split(4,2)",
            "h1_vertical_plane", "h1_characteristic_plane", "pansu_sphere"};
}

CatalogEntry catalog_get(const std::string& name) {
    static const std::regex hn(R"(heisenberg_hn\((\d+)\))"), split(R"(euclidean_split\((\d+),\s*(\d+)\))");
    std::smatch m;
    if (name == "heisenberg_h1") return heisenberg_h1_entry();
    if (name == "heisenberg_contact_h1") return heisenberg_contact_entry();
    if (name == "engel") return engel_entry();
    if (name == "r5_degree2") return r5_degree2_entry();
    if (name == "r5_rank3") return r5_rank3_entry();
    if (name == "kolmogorov") return kolmogorov_entry();
    if (name == "h1_vertical_plane") return vertical_plane_entry();
    if (name == "h1_characteristic_plane") return characteristic_plane_entry();
    if (name == "pansu_sphere") return pansu_entry();
    if (std::regex_match(name, m, hn)) {
        const int n = std::stoi(m[1]);
        if (n < 1) throw LookupError("heisenberg_hn(n) needs n >= 1");
        return heisenberg_hn_entry(n);
    }
    if (std::regex_match(name, m, split)) {
        const int n = std::stoi(m[1]), k = std::stoi(m[2]);
        if (n < 2 || k < 1 || k > n) throw LookupError("euclidean_split(n,k) needs n >= 2 and 1 <= k <= n");
        return euclidean_split_entry(n, k);
    }
    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; available: heisenberg_h1, heisenberg_hn(n), heisenberg_contact_h1, "
          "engel, r5_degree2, r5_rank3, kolmogorov, euclidean_split(n,k), h1_vertical_plane, "
          "h1_characteristic_plane, pansu_sphere";
    throw LookupError(os.str());
}

}  // namespace graded
