#pragma once

#include <complex>

#include "painleve/specfun.hpp"

namespace painleve {

// (alpha, k) labelling a real Ablowitz-Segur solution. Construct through
// make_params so the domain is always checked.
class ASParams {
public:
    double alpha() const { return alpha_; }
    double k() const { return k_; }
    bool degenerate() const { return degenerate_; }

private:
    ASParams(double alpha, double k) : alpha_(alpha), k_(k), degenerate_(alpha == 0.0 && k == 0.0) {}
    friend ASParams make_params(double alpha, double k);

    double alpha_;
    double k_;
    bool degenerate_;
};

// |alpha| < 1/2 and |k| < cos(pi alpha), else DomainError.
ASParams make_params(double alpha, double k);

struct StokesTriple {
    cplx s1, s2, s3;
};

StokesTriple stokes_triple(const ASParams& p);

// |s1 - s2 + s3 + s1 s2 s3 + 2 sin(pi alpha)|
double stokes_constraint_residual(const StokesTriple& s, double alpha);

struct ConnectionConstants {
    double d;
    double phi;  // in (-pi, pi]
};

// Throws DegenerateError for (0, 0).
ConnectionConstants connection_constants(const ASParams& p);

// d alone; zero for the degenerate pair.
double amplitude_d(const ASParams& p);

struct RHConstants {
    cplx nu, h0, h1;
};

RHConstants rh_constants(const ASParams& p);

// Reduce an angle into (-pi, pi].
double wrap_phase(double phi);

}  // namespace painleve
