#include <doctest.h>

#include "hdq/symmetric.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

// Oracle for the upper-triangular algebra: coordinates (a, b, c) are the
// matrix [[a, b], [0, c]].
Vec matmul_ut(const Vec& p, const Vec& q)
{
    return {p[0] * q[0], p[0] * q[1] + p[1] * q[2], p[2] * q[2]};
}

AlgebraHD identity_first_order(const FinDimAlgebra& alg)
{
    RatMatrix id(alg.dim(), Vec(alg.dim()));
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        id[i][i] = 1;
    }
    return AlgebraHD(alg, {id}, "delta_1 = id");
}

}  // namespace

TEST_CASE("built-in algebras")
{
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    Sampler sampler(5, 3, 7);
    for (int t = 0; t < 100; ++t) {
        const Vec p{sampler.rational(), sampler.rational(), sampler.rational()};
        const Vec q{sampler.rational(), sampler.rational(), sampler.rational()};
        CHECK(ut.mul(p, q) == matmul_ut(p, q));
    }
    CHECK(ut.unit() == Vec{1, 0, 1});

    const auto c2 = FinDimAlgebra::group_algebra_c2();
    CHECK(c2.mul(c2.basis(1), c2.basis(1)) == c2.basis(0));
    CHECK(c2.to_string(Vec{Rational(1, 2), -3}) == "1/2*1 - 3*g");
}

TEST_CASE("structure-constant files")
{
    const auto alg = FinDimAlgebra::parse("# ut\ndimension 3\nnames E11 E12 E22\n"
                                          "0 0 0 1\n0 1 1 1\n1 2 1 1\n2 2 2 1\n");
    CHECK(alg.unit() == Vec{1, 0, 1});  // solved for
    CHECK(alg.names()[1] == "E12");
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(alg.mul(alg.basis(i), alg.basis(j)) == ut.mul(ut.basis(i), ut.basis(j)));
        }
    }
    // e0 e0 = e1 and nothing else: no unit exists.
    CHECK_THROWS_AS(FinDimAlgebra::parse("dimension 2\n0 0 1 1\n"), std::invalid_argument);
    // Unit e0, e1 e1 = e2, e1 e2 = e1: (e1 e1) e1 = 0 but e1 (e1 e1) = e1.
    CHECK_THROWS_AS(FinDimAlgebra::parse("dimension 3\nunit 1 0 0\n0 0 0 1\n0 1 1 1\n0 2 2 1\n1 0 1 1\n"
                                         "2 0 2 1\n1 1 2 1\n1 2 1 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(FinDimAlgebra::parse("0 0 0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(FinDimAlgebra::parse("dimension 2\n0 0 5 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(FinDimAlgebra::load("/nonexistent/alg.txt"), std::runtime_error);
}

TEST_CASE("enveloping multiplication")
{
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    const Vec e11 = ut.basis(0);
    const Vec e12 = ut.basis(1);
    const Vec e22 = ut.basis(2);

    const EnvElement ab = tensor(ut, e12, e11);
    CHECK(env_mul(ut, env_unit(ut), ab) == ab);
    CHECK(env_mul(ut, tensor(ut, e11, e22), tensor(ut, e12, e22)) == tensor(ut, e12, e22));
    const EnvElement e12_one = tensor(ut, e12, ut.unit());
    CHECK(env_mul(ut, e12_one, e12_one) == EnvElement{Vec(9)});
    // The second factor multiplies in the opposite order: (1⊗E11)(1⊗E12) = 1⊗E12E11 = 0.
    CHECK(env_mul(ut, tensor(ut, ut.unit(), e11), tensor(ut, ut.unit(), e12)) == EnvElement{Vec(9)});
    CHECK(to_string(ut, tensor(ut, e12, e11)) == "E12⊗E11");
    CHECK_THROWS_AS(env_mul(ut, EnvElement{Vec(4)}, ab), std::invalid_argument);

    for (const auto& alg : {ut, FinDimAlgebra::group_algebra_c2()}) {
        const auto rep = env_axioms_check(alg);
        CHECK(rep.passed);
    }
    // The other action convention breaks the module axiom in the noncommutative
    // algebra and is harmless in the commutative one.
    CHECK(env_axioms_check(ut).details["other_convention_failures"].get<int>() > 0);
    CHECK(env_axioms_check(FinDimAlgebra::group_algebra_c2()).details["other_convention_failures"] == 0);
}

TEST_CASE("inner higher derivation")
{
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    const auto inner = AlgebraHD::inner(ut, ut.basis(0), 4);
    CHECK(inner.apply(1, ut.basis(1)) == ut.basis(1));
    CHECK(inner.apply(1, ut.basis(0)) == ut.zero());
    CHECK(inner.apply(1, ut.basis(2)) == ut.zero());
    // delta^n(E12) = E12, so delta_n(E12) = E12 / n!.
    CHECK(inner.apply(3, ut.basis(1)) == scale(ut.basis(1), Rational(1, 6)));
    CHECK(inner.apply(0, ut.basis(2)) == ut.basis(2));
    CHECK_THROWS_AS((void)inner.apply(5, ut.basis(0)), std::out_of_range);

    CHECK(algebra_hd_check(ut, inner, 4).passed);
    CHECK(algebra_hd_check(ut, AlgebraHD::trivial(ut, 3), 3).passed);
    const auto bad = algebra_hd_check(ut, identity_first_order(ut), 1, Expectation::Fail);
    CHECK_FALSE(bad.passed);
    CHECK(bad.as_expected());
    CHECK(bad.witness["a"] == "E11");
    CHECK(bad.witness["b"] == "E11");
}

TEST_CASE("bar lift")
{
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    const auto inner = AlgebraHD::inner(ut, ut.basis(0), 3);
    const EnvElement p = tensor(ut, ut.basis(1), ut.basis(0));
    CHECK(bar_delta(ut, inner, 1, p) == p);
    CHECK(bar_delta(ut, inner, 0, p) == p);
    CHECK(bar_delta(ut, AlgebraHD::trivial(ut, 2), 2, p) == EnvElement{Vec(9)});
    CHECK_THROWS_AS(bar_delta(ut, inner, 4, p), std::out_of_range);

    SampleSpec spec;
    spec.count = 50;
    const auto rep = verify_bar_hd(ut, inner, 3, spec);
    CHECK(rep.passed);
    CHECK(rep.details["basis_pairs"] == 81);
    CHECK(rep.samples == 131);
    CHECK(verify_bar_hd(ut, AlgebraHD::trivial(ut, 3), 3, spec).passed);

    const auto c2 = FinDimAlgebra::group_algebra_c2();
    CHECK(verify_bar_hd(c2, AlgebraHD::trivial(c2, 3), 3, spec).passed);
    // Inner derivations vanish on a commutative algebra.
    CHECK(verify_bar_hd(c2, AlgebraHD::inner(c2, c2.basis(1), 3), 3, spec).passed);

    const auto bad = verify_bar_hd(ut, identity_first_order(ut), 1, spec, Expectation::Fail);
    CHECK_FALSE(bad.passed);
    CHECK(bad.as_expected());
    CHECK(bad.details["algebra_hd_law"] == false);
    CHECK(bad.witness["n"] == 1);
}

TEST_CASE("bimodule correspondence")
{
    const auto ut = FinDimAlgebra::upper_triangular_2x2();
    const auto inner = AlgebraHD::inner(ut, ut.basis(0), 3);
    const auto rep = bimodule_correspondence_check(ut, inner, 3);
    CHECK(rep.passed);
    CHECK(rep.details["module_law_instances"] == 4 * 27);
    CHECK(bimodule_correspondence_check(ut, inner, 0).passed);

    // Order 1 by hand: d(x r) = d(x) r + x delta(r) with x = E11, r = E12.
    const Vec x = ut.basis(0);
    const Vec r = ut.basis(1);
    CHECK(inner.apply(1, ut.mul(x, r)) == add(ut.mul(inner.apply(1, x), r), ut.mul(x, inner.apply(1, r))));
    CHECK(inner.apply(1, ut.mul(r, x)) == add(ut.mul(inner.apply(1, r), x), ut.mul(r, inner.apply(1, x))));

    const auto bad = bimodule_correspondence_check(ut, identity_first_order(ut), 1, Expectation::Fail);
    CHECK_FALSE(bad.passed);
    CHECK(bad.as_expected());

    const auto c2 = FinDimAlgebra::group_algebra_c2();
    CHECK(bimodule_correspondence_check(c2, AlgebraHD::trivial(c2, 3), 3).passed);
}
