#pragma once

#include <complex>

namespace painleve {

using cplx = std::complex<double>;

struct AiryValue {
    double ai;
    double ai_prime;
};

// Ai(x) and Ai'(x). Maclaurin series (summed in quad precision) for
// |x| <= 9, asymptotic expansions beyond.
AiryValue airy_ai(double x);

// Principal branch of log Gamma, continuous off the negative real axis.
// Throws DomainError at non-positive integers.
cplx log_gamma(cplx z);

// 1/Gamma(z), entire; exact zero at the poles of Gamma.
cplx rgamma(cplx z);

struct PcfValue {
    cplx value;
    cplx derivative;
};

// Weber parabolic cylinder function D_nu(z) and dD_nu/dz.
// Supported range |z| <= 50 (RangeError beyond); tuned for |nu| <= 3.
PcfValue pcf_d(cplx nu, cplx z);

// Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

}  // namespace painleve
