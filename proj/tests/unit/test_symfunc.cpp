#include <doctest.h>

#include "oracles.hpp"
#include "sigwalk/rng.hpp"
#include "sigwalk/symfunc.hpp"

#include <set>

using namespace sigwalk;

namespace {

EvaluationPoint point(std::initializer_list<Rational> values) { return EvaluationPoint(std::vector<Rational>(values)); }

std::vector<Signature> partitions_up_to(int n, int boxes) {
    std::vector<Signature> out;
    for (const auto& s : signature_window(n, 0, boxes))
        if (s.total() <= boxes) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("elementary and complete symmetric polynomials") {
    CHECK(h_eval(2, point({1, 2})) == 7);
    CHECK(h_eval(0, point({5})) == 1);
    CHECK(h_eval(-1, point({5})) == 0);
    CHECK(e_eval(2, point({1, 2, 3})) == 11);
    CHECK(e_eval(4, point({1, 2, 3})) == 0);
    CHECK(e_eval(3, point({1, 2, 3})) == 6);
}

TEST_CASE("schur values") {
    CHECK(schur_eval(Signature({2, 1}), point({2, 3})) == 30);
    CHECK(schur_eval(Signature({2, 1}), EvaluationPoint::ones(2)) == 2);
    CHECK(schur_eval(Signature({0, -1}), point({2, 3})) == Rational(5, 6));
    CHECK(schur_eval(Signature({0, 0, 0}), point({7, 1, 2})) == 1);
    CHECK_THROWS_AS(schur_bialternant(Signature({1, 0}), point({2, 2})), DomainError);
}

TEST_CASE("jacobi-trudi agrees with the bialternant oracle") {
    Philox4x32 rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Rational> theta;
            std::set<Rational> seen;
            while (static_cast<int>(theta.size()) < n) {
                Rational t(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 5 + 1));
                t.canonicalize();
                if (seen.insert(t).second) theta.push_back(t);
            }
            const EvaluationPoint p(theta);
            for (const auto& lambda : signature_window(n, -2, 2)) {
                CHECK(schur_eval(lambda, p) == oracle::bialternant_schur(lambda.parts(), theta));
                CHECK(schur_bialternant(lambda, p) == schur_eval(lambda, p));
            }
        }
    }
    for (int n = 1; n <= 3; ++n)
        for (const auto& lambda : signature_window(n, -3, 3))
            CHECK(schur_eval(lambda, EvaluationPoint::ones(n)) == dimension(lambda));
}

TEST_CASE("memoizing evaluator") {
    const auto p = point({1, Rational(1, 2), 3});
    SchurEvaluator eval(p);
    for (const auto& lambda : signature_window(3, -2, 2)) CHECK(eval(lambda) == schur_eval(lambda, p));
}

TEST_CASE("weight multiplicities") {
    CHECK(weight_multiplicity(Signature({2, 1, 0}), Weight({1, 1, 1})) == 2);
    CHECK(weight_multiplicity(Signature({2, 1, 0}), Weight({0, 1, 2})) == 1);
    CHECK(weight_multiplicity(Signature({2, 1, 0}), Weight({3, 0, 0})) == 0);
    CHECK(weight_multiplicity(Signature({2, 1, 0}), Weight({1, 1, 0})) == 0);
    CHECK(weight_multiplicity(Signature({0, -1}), Weight({-1, 0})) == 1);
    const auto e = weight_expansion(Signature({1, 0}));
    CHECK(e == WeightExpansion{{Weight({1, 0}), 1}, {Weight({0, 1}), 1}});
    for (int n = 1; n <= 3; ++n)
        for (const auto& lambda : signature_window(n, -1, 2)) {
            long total = 0;
            for (const auto& [w, m] : weight_expansion(lambda)) total += m;
            CHECK(Rational(total) == dimension(lambda));
        }
    CHECK_THROWS_AS(weight_expansion(Signature({9, 0, 0, 0, 0})), ResourceError);
}

TEST_CASE("littlewood-richardson coefficients") {
    CHECK(lr_coeff(Signature({2, 1, 0}), Signature({3, 2, 1}), Signature({4, 3, 2})) == 2);
    CHECK(lr_coeff(Signature({1, 0}), Signature({1, 0}), Signature({2, 0})) == 1);
    CHECK(lr_coeff(Signature({1, 0}), Signature({1, 0}), Signature({1, 1})) == 1);
    CHECK(lr_coeff(Signature({1, 0}), Signature({1, 0}), Signature({3, -1})) == 0);
    CHECK(lr_coeff(Signature({0, -1}), Signature({1, 0}), Signature({0, 0})) == 1);
    CHECK(triple_coeff(Signature({1, 0, 0}), Signature({1, 0, 0}), Signature({1, 0, 0}), Signature({2, 1, 0})) == 2);
    CHECK(lr_product(Signature({1, 0}), Signature({1, 0})) ==
          std::map<Signature, long>{{Signature({2, 0}), 1}, {Signature({1, 1}), 1}});
}

TEST_CASE("tableau route agrees with the Kostka route") {
    for (int n = 1; n <= 3; ++n) {
        const auto shapes = partitions_up_to(n, 3);
        for (const auto& lambda : shapes)
            for (const auto& mu : shapes) CHECK(lr_product(lambda, mu) == lr_product_oracle(lambda, mu));
    }
    CHECK(lr_product(Signature({1, -1}), Signature({0, -2})) ==
          lr_product_oracle(Signature({1, -1}), Signature({0, -2})));
}

TEST_CASE("dimension is multiplicative across the LR decomposition") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& lambda : signature_window(n, -1, 1))
            for (const auto& mu : signature_window(n, -1, 2)) {
                Rational total(0);
                for (const auto& [tau, c] : lr_product(lambda, mu)) total += c * dimension(tau);
                CHECK(total == dimension(lambda) * dimension(mu));
            }
}

TEST_CASE("pieri rules") {
    CHECK(pieri_row(Signature({1, 0}), 1) == std::vector<Signature>{Signature({1, 1}), Signature({2, 0})});
    CHECK(pieri_column(Signature({1, 0}), 1) == std::vector<Signature>{Signature({1, 1}), Signature({2, 0})});
    CHECK(pieri_column(Signature({1, 0}), 3).empty());
    for (const auto& lambda : signature_window(3, -1, 1))
        for (int k = 0; k <= 3; ++k) {
            std::vector<int> row(3, 0), col(3, 0);
            row[0] = k;
            for (int i = 0; i < k; ++i) col[static_cast<size_t>(i)] = 1;
            for (const auto& tau : pieri_row(lambda, k)) CHECK(lr_coeff(lambda, Signature(row), tau) == 1);
            for (const auto& tau : pieri_column(lambda, k)) CHECK(lr_coeff(lambda, Signature(col), tau) == 1);
            CHECK(lr_product(lambda, Signature(row)).size() == pieri_row(lambda, k).size());
        }
}

TEST_CASE("standard tableaux") {
    CHECK(standard_tableaux(Signature({2, 1, 0})) == 2);
    CHECK(standard_tableaux(Signature({3, 2})) == 5);
    CHECK(standard_tableaux(Signature({0, 0})) == 1);
}
