#include <doctest.h>

#include "oracles.hpp"
#include "sigwalk/quantum.hpp"

using namespace sigwalk;

namespace {

const Rational half(1, 2), third(1, 3);

Scalar q(long a, long b = 1) { return Scalar(Rational(a) / b); }

std::vector<Signature> partitions_up_to(int n, int boxes) {
    std::vector<Signature> out;
    for (const auto& s : signature_window(n, 0, boxes))
        if (s.total() <= boxes) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("named expansions") {
    const Rational p = half;
    auto k = kappa_of(SpectralFunction::beta_plus(p), 2);
    CHECK(k.expansion() == std::map<Signature, Scalar>{{Signature({0, 0}), q(4, 9)},
                                                      {Signature({1, 0}), q(2, 9)},
                                                      {Signature({1, 1}), q(1, 9)}});
    CHECK(k.value_at_identity() == Scalar(1));
    CHECK(k.exact());

    auto a = kappa_of(SpectralFunction::alpha_plus(third), 1, 3);
    CHECK(a.expansion().size() == 4);
    CHECK(a.coefficient(Signature({2})) == q(2, 27));
    CHECK(a.tail() == q(1, 81));
    CHECK(a.truncation() == 3);
    CHECK_FALSE(a.exact());

    auto m = kappa_of(SpectralFunction::alpha_minus(half), 2);
    CHECK(m.tail().to_double() < 1e-9);
    CHECK(m.coefficient(Signature({0, -3})) == q(1, 32));
    CHECK((m.value_at_identity() + m.tail()) == Scalar(1));

    auto b = kappa_of(SpectralFunction::beta_minus(third), 3);
    CHECK(b.coefficient(Signature({0, -1, -1})) == Scalar(Rational(1, 9) / pow(Rational(4, 3), 3)));

    auto g = kappa_of(SpectralFunction::gamma_plus(half), 2);
    CHECK(g.value_at_identity().to_double() == doctest::Approx(1.0).epsilon(1e-9));
    // e^{-2t} t^2 f^{(1,1)} / 2!
    CHECK(g.coefficient(Signature({1, 1})).to_double() == doctest::Approx(std::exp(-1.0) * 0.25 / 2));
    auto gm = kappa_of(SpectralFunction::gamma_minus(half), 2);
    CHECK(gm.coefficient(Signature({-1, -2})).to_double() == doctest::Approx(g.coefficient(Signature({2, 1})).to_double()));
}

TEST_CASE("laurent expansions match the named tables") {
    CHECK(kappa_of(SpectralFunction::identity(), 3).expansion() ==
          std::map<Signature, Scalar>{{Signature::zero(3), Scalar(1)}});
    for (int n = 1; n <= 3; ++n) {
        CHECK(kappa_of(SpectralFunction::parse("laurent{-1:1,0:1}"), n).expansion() ==
              kappa_of(SpectralFunction::beta_minus(Rational(1)), n).expansion());
        CHECK(kappa_of(SpectralFunction::parse("laurent{0:1,1:1/2}"), n).expansion() ==
              kappa_of(SpectralFunction::beta_plus(half), n).expansion());
        // (1 + z/2)(1 + 1/(3z)): multiplying the two class functions equals expanding the product polynomial
        CHECK(kappa_of(SpectralFunction::parse("laurent{-1:1/3,0:7/6,1:1/2}"), n).expansion() ==
              kappa_of(SpectralFunction::parse("prod(beta+:1/2,beta-:1/3)"), n).expansion());
    }
    CHECK_THROWS_AS(kappa_of(SpectralFunction::parse("laurent{0:1,1:-1}"), 2), DomainError);
}

TEST_CASE("Q kernel entries") {
    const Rational p = half;
    auto k = kappa_of(SpectralFunction::beta_plus(p), 2);
    CHECK(qn_entry(k, Signature({0, 0}), Signature({1, 0})) == Scalar(Rational(2 * p / ((1 + p) * (1 + p)))));

    const Signature beta({2, 1, 0});
    auto chi = ClassFunction::normalized_character(beta);
    for (const auto& lambda : signature_window(3, -1, 1))
        for (const auto& mu : signature_window(3, -1, 3))
            CHECK(qn_entry(chi, lambda, mu) ==
                  Scalar(Rational(dimension(mu) * lr_coeff(lambda, beta, mu) / (dimension(lambda) * dimension(beta)))));

    auto one = kappa_of(SpectralFunction::identity(), 2);
    for (const auto& lambda : signature_window(2, -2, 2))
        for (const auto& mu : signature_window(2, -2, 2)) CHECK(qn_entry(one, lambda, mu) == Scalar(lambda == mu ? 1 : 0));
}

TEST_CASE("Q rows are stochastic for normalized nonnegative expansions") {
    for (const char* F : {"beta+:1/2", "beta-:1/3", "prod(beta+:1/2,beta-:1/2)"}) {
        auto k = kappa_of(SpectralFunction::parse(F), 3);
        for (const auto& lambda : signature_window(3, -2, 2)) {
            Scalar total(0);
            for (const auto& [mu, v] : qn_row(k, lambda)) {
                CHECK(v.sign() > 0);
                CHECK(v == qn_entry(k, lambda, mu));
                total += v;
            }
            CHECK(total == Scalar(1));
        }
    }
}

TEST_CASE("torus kernel") {
    const Rational p = half;
    auto k1 = kappa_of(SpectralFunction::beta_plus(p), 1);
    CHECK(pn_entry(k1, Weight({4}), Weight({5})) == Scalar(Rational(p / (1 + p))));
    CHECK(pn_entry(k1, Weight({4}), Weight({4})) == Scalar(Rational(1 / (1 + p))));
    CHECK(pn_entry(k1, Weight({4}), Weight({6})) == Scalar(0));

    auto k2 = kappa_of(SpectralFunction::beta_plus(p), 2);
    const auto step = torus_step(k2);
    CHECK(step.mass() == Scalar(1));
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            Rational expected = (a ? p : 1) * (b ? p : 1) / ((1 + p) * (1 + p));
            CHECK(pn_entry(k2, Weight({1, -1}), Weight({1 + a, -1 + b})) == Scalar(expected));
            CHECK(step.law.at(Weight({a, b})) == Scalar(expected));
        }
    auto one = kappa_of(SpectralFunction::identity(), 2);
    CHECK(pn_entry(one, Weight({3, 1}), Weight({3, 1})) == Scalar(1));
    CHECK(pn_entry(one, Weight({3, 1}), Weight({1, 3})) == Scalar(0));
}

TEST_CASE("quantum random walk pairing") {
    auto r1 = check_qrw(SpectralFunction::beta_plus(half), 1, signature_window(1, -3, 3), 1e-9);
    CHECK(r1.pass);
    CHECK(r1.details["pairing"] == "inverted");
    // rank one by hand: kappa of beta+(1/2) is 2/3 + (1/3) z, which steps up with
    // probability 1/3; that is T_1(1; beta-(1/2)), while beta+ only steps down
    const auto k1 = kappa_of(SpectralFunction::beta_plus(half), 1);
    CHECK(qn_entry(k1, Signature({0}), Signature({1})) == Scalar(Rational(1, 3)));
    CHECK(tn_entry(EvaluationPoint::ones(1), SpectralFunction::beta_minus(half), Signature({0}), Signature({1})) ==
          Scalar(Rational(1, 3)));
    CHECK(tn_entry(EvaluationPoint::ones(1), SpectralFunction::beta_plus(half), Signature({0}), Signature({1})).is_zero());

    for (const char* F : {"beta+:1/2", "beta-:1/3"}) {
        auto r = check_qrw(SpectralFunction::parse(F), 2, signature_window(2, -2, 2), 1e-9);
        CHECK_MESSAGE(r.pass, r.to_json().dump());
        CHECK(r.details["pairing"] == "inverted");
        CHECK(r.max_abs_error == Scalar(0));
    }
    auto id = check_qrw(SpectralFunction::identity(), 2, signature_window(2, -1, 1), 1e-9);
    CHECK(id.details["pairing"] == "both");

    auto a = check_qrw(SpectralFunction::alpha_minus(half), 2, signature_window(2, -1, 1), 1e-9);
    CHECK_MESSAGE(a.pass, a.to_json().dump());
    CHECK(a.details["pairing"] == "inverted");

    auto g = check_qrw(SpectralFunction::gamma_plus(half), 2, signature_window(2, -1, 1), 1e-9);
    CHECK_MESSAGE(g.pass, g.to_json().dump());
    CHECK(g.details["pairing"] == "inverted");
}

TEST_CASE("center intertwining") {
    auto r = check_center_intertwining(ClassFunction::character(Signature({1, 0})), Signature({1, 0}), Signature({2, 0}));
    CHECK(r.pass);
    CHECK(r.details["lhs"] == "3/2");
    CHECK(r.details["rhs"] == "3/2");
    for (const auto& beta : partitions_up_to(2, 3)) {
        auto w = check_center_window(ClassFunction::normalized_character(beta), signature_window(2, -2, 2));
        CHECK_MESSAGE(w.pass, w.to_json().dump());
    }
    auto b = check_center_window(kappa_of(SpectralFunction::beta_plus(half), 2), signature_window(2, -3, 3));
    CHECK(b.pass);
}

TEST_CASE("Q morphism") {
    auto k1 = kappa_of(SpectralFunction::beta_plus(half), 2);
    auto k2 = ClassFunction::normalized_character(Signature({2, 0}));
    auto r = check_q_morphism(k1, k2, signature_window(2, -2, 2));
    CHECK_MESSAGE(r.pass, r.to_json().dump());
    auto r3 = check_q_morphism(kappa_of(SpectralFunction::beta_minus(third), 3),
                               ClassFunction::normalized_character(Signature({1, 1, 0})), signature_window(3, -1, 1));
    CHECK_MESSAGE(r3.pass, r3.to_json().dump());
}

TEST_CASE("torus restriction") {
    const Signature box({1, 0});
    auto r = check_torus(ClassFunction::character(box), ClassFunction::character(box), box, box);
    CHECK_MESSAGE(r.pass, r.to_json().dump());
    CHECK(r.compared > 100);

    std::map<Weight, long> product_law;
    for (const auto& [tau, c] : lr_product(box, box))
        for (const auto& [w, m] : weight_expansion(tau)) product_law[w] += c * m;
    CHECK(product_law == std::map<Weight, long>{{Weight({2, 0}), 1}, {Weight({1, 1}), 2}, {Weight({0, 2}), 1}});

    auto t = check_torus(kappa_of(SpectralFunction::beta_plus(half), 3), ClassFunction::normalized_character(Signature({2, 1, 0})),
                         Signature({2, 1, 0}), Signature({1, 0, -1}), 5);
    CHECK_MESSAGE(t.pass, t.to_json().dump());
}

TEST_CASE("Weyl-integration oracle agrees with the LR evaluation") {
    for (int n = 1; n <= 2; ++n)
        for (const char* name : {"beta+", "beta-", "alpha+"}) {
            const oracle::Family ref{name, half};
            auto kappa = kappa_of(SpectralFunction::parse(std::string(name) + ":1/2"), n);
            for (const auto& lambda : signature_window(n, -2, 2))
                for (const auto& mu : signature_window(n, -2, 2)) {
                    const Rational brute = oracle::brute_qn(ref, lambda.parts(), mu.parts());
                    const Scalar value = qn_entry(kappa, lambda, mu);
                    if (kappa.exact())
                        CHECK(value == Scalar(brute));
                    else
                        CHECK(std::abs(value.to_double() - brute.get_d()) < 1e-9);
                }
        }
}
