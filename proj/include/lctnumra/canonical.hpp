#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lctnumra {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnimodularTol = 1e-12;

// Parameter matrix (a b; c d) of a linear canonical transform.
struct CanonicalMatrix {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    // Coefficient of the chirp e^{-i pi (a/b) t^2} attached to basis elements.
    double chirp_ratio() const;
};

struct ValidationReport {
    bool ok = true;
    double det = 1;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

// Total check of unimodularity and b != 0. In permissive mode a nonzero
// determinant other than 1 is downgraded to a warning.
ValidationReport validate(const CanonicalMatrix& m, bool permissive = false);

// Throws std::invalid_argument carrying the first violation.
void require_valid(const CanonicalMatrix& m, bool permissive = false);
// Only rejects b = 0; used where unimodularity is not needed.
void require_nonzero_b(const CanonicalMatrix& m);

CanonicalMatrix compose(const CanonicalMatrix& m1, const CanonicalMatrix& m2);

CanonicalMatrix identity_matrix();
CanonicalMatrix fourier();
CanonicalMatrix frft(double theta);
CanonicalMatrix fresnel(double b);

// Principal square root of 2 i pi b, argument in (-pi/2, pi/2].
cplx kernel_root(const CanonicalMatrix& m);
cplx kernel(const CanonicalMatrix& m, double t, double w);

CanonicalMatrix parse_matrix(const std::string& csv);
std::string format_matrix(const CanonicalMatrix& m);

}  // namespace lctnumra
