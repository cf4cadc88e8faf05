#pragma once

#include "hnormal/matcore.hpp"

namespace hnormal {

enum class CongruenceKind { Triangular, Diagonal };

struct CongruenceForm2 {
    CongruenceKind kind = CongruenceKind::Diagonal;
    cplx z{1.0, 0.0};
    double rho = 0.0;
    cplx z1{1.0, 0.0};
    cplx z2{1.0, 0.0};
    CMatrix T;
    double residual = 0.0;

    CMatrix form() const;
};

// [[z, rho e^{-i pi/3} z], [0, e^{i pi/3} z]]
CMatrix triangular_congruence_form(cplx z, double rho);

// f(rho) = (1 - rho^2 - sqrt((rho^2 + 1)(rho^2 - 3))) / 2 on rho >= sqrt(3).
double rho_function(double rho);

// Inverse of rho_function on [sqrt(3), inf); s must be <= -1.
double solve_rho(double s);

// T with T A T* equal to the canonical representative of A.
CongruenceForm2 congruence_canonical_2x2(const CMatrix& a);

// arg in [0, 2 pi).
double principal_arg(cplx w);

}  // namespace hnormal
