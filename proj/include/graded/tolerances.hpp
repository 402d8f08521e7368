#pragma once

namespace graded {

struct Tolerances {
    double rank_tol = 1e-9;        // relative singular-value threshold for frames and A(t)
    double rank_abs_tol = 1e-9;    // absolute floor used for pointwise rank of A(t)
    double degree_tol = 1e-9;      // relative threshold in degree_of_vector
    double bracket_tol = 1e-8;     // filtration check
    double gram_rank_tol = 1e-8;   // relative threshold for the holonomy Gram matrix
    double gram_abs_tol = 1e-14;   // absolute floor for the Gram matrix
    double ode_vs_quad_tol = 1e-7;
    double adm_tol = 1e-6;
    double sing_tol = 1e-6;
    double density_tol = 1e-6;     // |theta_d - 1| allowed by the geodesic residual

    // Loosens (x > 1) or tightens (x < 1) every acceptance threshold.
    Tolerances scaled(double x) const {
        Tolerances t = *this;
        t.bracket_tol *= x;
        t.ode_vs_quad_tol *= x;
        t.adm_tol *= x;
        t.sing_tol *= x;
        t.density_tol *= x;
        return t;
    }
};

}  // namespace graded
