#include "lctnumra/canonical.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lctnumra/io.hpp"

namespace lctnumra {

namespace {

const char* kBZero = "b = 0 branch out of scope";

}  // namespace

double CanonicalMatrix::chirp_ratio() const {
    require_nonzero_b(*this);
    return a / b;
}

ValidationReport validate(const CanonicalMatrix& m, bool permissive) {
    ValidationReport rep;
    rep.det = m.det();
    if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) || !std::isfinite(m.d)) {
        rep.ok = false;
        rep.violations.push_back("non-finite matrix entry");
        return rep;
    }
    if (std::abs(rep.det - 1.0) > kUnimodularTol) {
        std::string msg = "unimodularity violated: det = " + format_double(rep.det);
        if (permissive && rep.det != 0.0) {
            rep.warnings.push_back(msg);
        } else {
            rep.ok = false;
            rep.violations.push_back(msg);
        }
    }
    if (m.b == 0.0) {
        rep.ok = false;
        rep.violations.push_back(kBZero);
    }
    return rep;
}

void require_valid(const CanonicalMatrix& m, bool permissive) {
    auto rep = validate(m, permissive);
    if (!rep.ok) throw std::invalid_argument(rep.violations.front());
}

void require_nonzero_b(const CanonicalMatrix& m) {
    if (m.b == 0.0) throw std::invalid_argument(kBZero);
}

CanonicalMatrix compose(const CanonicalMatrix& m1, const CanonicalMatrix& m2) {
    // Composition is a plain matrix product; b = 0 products are legitimate.
    for (const auto* m : {&m1, &m2}) {
        if (std::abs(m->det() - 1.0) > kUnimodularTol)
            throw std::invalid_argument("compose: unimodularity violated: det = " +
                                        format_double(m->det()));
    }
    return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
            m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

CanonicalMatrix identity_matrix() { return {1, 0, 0, 1}; }

CanonicalMatrix fourier() { return {0, 1, -1, 0}; }

CanonicalMatrix frft(double theta) {
    const double s = std::sin(theta);
    if (std::abs(s) <= 1e-12) throw std::invalid_argument(kBZero);
    const double c = std::cos(theta);
    return {c, s, -s, c};
}

CanonicalMatrix fresnel(double b) {
    if (b == 0.0) throw std::invalid_argument(kBZero);
    return {1, b, 0, 1};
}

cplx kernel_root(const CanonicalMatrix& m) {
    require_nonzero_b(m);
    // std::sqrt takes the principal branch, Re >= 0.
    return std::sqrt(cplx(0.0, 2.0 * kPi * m.b));
}

cplx kernel(const CanonicalMatrix& m, double t, double w) {
    const cplx root = kernel_root(m);
    const double phase = (m.a * t * t - 2.0 * t * w + m.d * w * w) / (2.0 * m.b);
    return std::polar(1.0, phase) / root;
}

CanonicalMatrix parse_matrix(const std::string& csv) {
    std::vector<double> v;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double x = 0;
        try {
            x = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("matrix entry is not a number: '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw std::invalid_argument("matrix entry is not a number: '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw std::invalid_argument("matrix needs exactly four entries a,b,c,d");
    return {v[0], v[1], v[2], v[3]};
}

std::string format_matrix(const CanonicalMatrix& m) {
    return format_double(m.a) + "," + format_double(m.b) + "," + format_double(m.c) + "," +
           format_double(m.d);
}

}  // namespace lctnumra
