#pragma once

namespace fenchel {

/// Numerical thresholds shared by every module. One record per run; the CLI
/// echoes it into each report.
struct Tolerances {
    /// |M(i,j) - M(j,i)| <= sym * max(1, max|M|)
    double sym = 1e-9;
    /// eigenvalue treated as zero when |d| <= sing * max|d|
    double sing = 1e-10;
    /// positive definite iff min eigenvalue > pd
    double pd = 1e-10;
    /// NotPSD when min eigenvalue < -psd * max(1, max|d|)
    double psd = 1e-10;
    /// consistent system iff ||Mx - rhs|| <= cons * (1 + ||rhs||)
    double cons = 1e-8;
    /// exact-pattern matching of transform parameters (tau == 1, c == w, E == -I, ...)
    double param = 1e-12;

    Tolerances scaled(double factor) const {
        Tolerances t = *this;
        t.sym *= factor;
        t.sing *= factor;
        t.pd *= factor;
        t.psd *= factor;
        t.cons *= factor;
        t.param *= factor;
        return t;
    }
};

} // namespace fenchel
