#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lctnumra/canonical.hpp"
#include "support.hpp"

using namespace lctnumra;
using namespace testing_support;

namespace {

void require_close(const CanonicalMatrix& x, const CanonicalMatrix& y, double tol) {
    CHECK(std::abs(x.a - y.a) <= tol);
    CHECK(std::abs(x.b - y.b) <= tol);
    CHECK(std::abs(x.c - y.c) <= tol);
    CHECK(std::abs(x.d - y.d) <= tol);
}

}  // namespace

TEST_CASE("validate accepts unimodular matrices and names the violation otherwise") {
    CHECK(validate(fourier()).ok);
    const ValidationReport chirp = validate({2, 1, 1, 1});
    CHECK(chirp.ok);
    CHECK(chirp.det == 1.0);

    const ValidationReport bad = validate({0, 1, 2, -1});
    CHECK_FALSE(bad.ok);
    CHECK(bad.det == -2.0);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].find("unimodular") != std::string::npos);

    const ValidationReport loose = validate({0, 1, 2, -1}, true);
    CHECK(loose.ok);
    CHECK(loose.warnings.size() == 1);
    CHECK_THROWS_AS(require_valid({0, 1, 2, -1}), std::invalid_argument);
    CHECK_NOTHROW(require_valid({0, 1, 2, -1}, true));
}

TEST_CASE("zero b is rejected by transform-facing helpers") {
    CHECK_THROWS_AS(require_nonzero_b(identity_matrix()), std::invalid_argument);
    CHECK_THROWS_AS(kernel_root(identity_matrix()), std::invalid_argument);
    CHECK_THROWS_AS(frft(0.0), std::invalid_argument);
}

TEST_CASE("named matrices") {
    require_close(fourier(), {0, 1, -1, 0}, 0);
    require_close(frft(kPi / 2), {0, 1, -1, 0}, 1e-15);
    require_close(fresnel(2), {1, 2, 0, 1}, 0);
}

TEST_CASE("compose examples") {
    const CanonicalMatrix m{2, 1, 1, 1};
    require_close(compose(identity_matrix(), m), m, 0);
    require_close(compose(fourier(), fourier()), {-1, 0, 0, -1}, 0);
    require_close(compose(frft(0.3), frft(0.9)), frft(1.2), 1e-12);
}

TEST_CASE("property: composition is associative and stays unimodular") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const CanonicalMatrix x = unimodular(rng), y = unimodular(rng), z = unimodular(rng);
        const CanonicalMatrix left = compose(compose(x, y), z), right = compose(x, compose(y, z));
        const double scale = 1 + std::abs(left.a) + std::abs(left.b) + std::abs(left.c) + std::abs(left.d);
        require_close(left, right, 1e-12 * scale * scale);
        CHECK(std::abs(compose(x, y).det() - 1) <= 1e-10 * scale);
        const CanonicalMatrix inv{x.d, -x.b, -x.c, x.a};
        require_close(compose(x, inv), identity_matrix(), 1e-12 * scale);
    }
}

TEST_CASE("kernel values") {
    const cplx root = std::sqrt(cplx(0, 2 * kPi));
    for (double t : {-1.3, 0.0, 0.7})
        for (double w : {-2.0, 0.5, 3.1})
            CHECK(std::abs(kernel(fourier(), t, w) - std::polar(1.0, -t * w) / root) <= 1e-15);
    const CanonicalMatrix m{2, 1.5, 2.0, 2.0};  // det = 1
    CHECK(std::abs(kernel(m, 0, 0) - 1.0 / std::sqrt(cplx(0, 2 * kPi * 1.5))) <= 1e-15);
}

TEST_CASE("property: kernel modulus and (t,a) <-> (w,d) symmetry") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 300; ++trial) {
        const CanonicalMatrix m = unimodular(rng);
        const double t = uniform(rng, -5, 5), w = uniform(rng, -5, 5);
        const cplx k = kernel(m, t, w);
        CHECK(std::abs(std::abs(k) - 1 / std::sqrt(2 * kPi * std::abs(m.b))) <= 1e-14);
        const CanonicalMatrix swapped{m.d, m.b, m.c, m.a};
        CHECK(std::abs(k - kernel(swapped, w, t)) <= 1e-12);
    }
}

TEST_CASE("matrix text round-trips exactly") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        const CanonicalMatrix m = unimodular(rng);
        const CanonicalMatrix back = parse_matrix(format_matrix(m));
        CHECK(back.a == m.a);
        CHECK(back.b == m.b);
        CHECK(back.c == m.c);
        CHECK(back.d == m.d);
    }
    require_close(parse_matrix("0,1,2,-1"), {0, 1, 2, -1}, 0);
    CHECK_THROWS(parse_matrix("1,2,3"));
    CHECK_THROWS(parse_matrix("1,2,x,4"));
}
