#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrea/shapes.hpp"

using namespace qrea;

namespace {

Shape make(std::vector<int> tau, std::vector<int> signs) {
    Shape S;
    S.n = static_cast<int>(tau.size());
    S.tau = std::move(tau);
    for (int s : signs) S.u.push_back(s == 0 ? UnitValue::zero() : UnitValue::of_sign(s));
    return S;
}

std::vector<Shape> all_shapes(int N) {
    std::vector<Shape> out;
    for (int M = 0; M <= N; ++M) {
        auto v = enumerate_self_adjoint_shapes(N, M);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace

TEST_CASE("codec examples") {
    CHECK(encode(Shape::identity(3)).isApprox(Eigen::MatrixXcd::Identity(3, 3)));
    Shape A;
    A.n = 2;
    A.tau = {2, 1};
    A.u = {UnitValue::of_phase(0.7), UnitValue::of_phase(-0.7)};
    auto M = encode(A);
    CHECK(std::abs(M(1, 0) - std::polar(1.0, 0.7)) < 1e-12);
    CHECK(std::abs(M(0, 1) - std::polar(1.0, -0.7)) < 1e-12);
    CHECK(decode(M).approx_equal(A));
    CHECK(A.is_self_adjoint());
    Shape Z = decode(Eigen::MatrixXcd::Zero(3, 3));
    CHECK(Z.rank() == 0);
    CHECK(Z.tau == std::vector<int>{1, 2, 3});

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 0) = 0.5;
    CHECK_THROWS_AS(decode(bad), ShapeError);
    bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(1, 0) = 1.0;
    CHECK_THROWS_AS(decode(bad), ShapeError);
}

TEST_CASE("json round trip") {
    for (const auto& S : all_shapes(4)) {
        auto j = shape_to_json(S);
        CHECK(shape_from_json(j).approx_equal(S));
        CHECK(shape_from_json(nlohmann::json::parse(j.dump())).approx_equal(S));
    }
    CHECK_THROWS_AS(shape_from_json(nlohmann::json::parse(R"({"n":2,"tau":[1,1],"u":[{"sign":1},{"sign":1}]})")),
                    ShapeError);
    CHECK_THROWS_AS(shape_from_json(nlohmann::json::parse(R"({"n":2,"tau":[2,1],"u":[{"zero":true},{"sign":1}]})")),
                    ShapeError);
}

TEST_CASE("restriction") {
    Shape S = make({4, 3, 2, 1}, {1, 1, 1, 1});
    Shape R = restrict_shape(S);
    CHECK(R.n == 3);
    CHECK(R.tau == std::vector<int>{1, 3, 2});
    CHECK(R.u[0].is_zero());
    CHECK(restrict_shape(make({1, 2, 3}, {1, 1, -1})).approx_equal(make({1, 2}, {1, 1})));
    for (int N = 2; N <= 5; ++N)
        for (const auto& X : all_shapes(N)) {
            Shape r = restrict_shape(X);
            Eigen::MatrixXcd block = encode(X).topLeftCorner(N - 1, N - 1);
            CHECK(encode(r).isApprox(block));
            Shape cur = X;
            while (cur.n > 1) cur = restrict_shape(cur);
            CHECK(cur.rank() <= 1);
        }
}

TEST_CASE("alpha transform") {
    auto two = alpha_transform(make({2, 1}, {1, 1}), 1);
    REQUIRE(two.size() == 2);
    CHECK(two[0].approx_equal(make({1, 2}, {1, -1})));
    CHECK(two[1].approx_equal(make({1, 2}, {-1, 1})));
    auto one = alpha_transform(make({1, 2}, {0, 1}), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].approx_equal(make({1, 2}, {1, 0})));
    auto same = alpha_transform(Shape::identity(3), 2);
    CHECK(same[0].approx_equal(Shape::identity(3)));
    for (int N = 2; N <= 4; ++N)
        for (const auto& S : all_shapes(N)) {
            Signature sig = signature(S);
            for (int k = 1; k < N; ++k)
                for (const auto& T : alpha_transform(S, k)) {
                    CHECK(T.is_self_adjoint());
                    CHECK(signature(T) == sig);
                }
        }
}

TEST_CASE("reduction to the big cell") {
    auto id = reduce_to_big_cell(make({1, 2, 3}, {1, -1, 0}));
    CHECK(id.word.empty());
    CHECK(id.eps == std::vector<int>{1, -1, 0});

    auto r2 = reduce_to_big_cell(make({2, 1}, {1, 1}));
    REQUIRE(r2.word.size() == 1);
    CHECK(r2.word[0].k == 1);
    CHECK(r2.eps == std::vector<int>{1, -1});

    Shape four = make({4, 3, 2, 1}, {1, 1, 1, 1});
    CHECK(reduce_to_big_cell(four, 1).eps == std::vector<int>{1, -1, 1, -1});
    CHECK(reduce_to_big_cell(four, -1).eps == std::vector<int>{-1, -1, 1, -1});

    for (int N = 1; N <= 4; ++N)
        for (const auto& S : all_shapes(N))
            for (int s : {1, -1}) {
                auto red = reduce_to_big_cell(S, s);
                CHECK(static_cast<int>(red.word.size()) <= N * N * N);
                CHECK(red.big_cell.rank() == S.rank());
                CHECK(signature_of_eps(red.eps) == signature(S));
                // replaying the word reproduces the big cell
                Shape cur = S;
                for (const auto& step : red.word) {
                    auto next = alpha_transform(cur, step.k);
                    if (step.split) cur = step.chosen_sign > 0 ? next[0] : next[1];
                    else cur = next[0];
                }
                CHECK(cur.approx_equal(red.big_cell));
                CHECK(big_cell_shape(red.eps).approx_equal(red.big_cell));
            }
}

TEST_CASE("signature") {
    CHECK(signature(make({1, 2, 3}, {1, -1, 0})) == Signature{1, 1, 1});
    CHECK(signature(make({2, 1}, {1, 1})) == Signature{1, 1, 0});
    CHECK(signature(Shape::identity(4)) == Signature{4, 0, 0});
}

TEST_CASE("rank equals matrix rank") {
    for (int N = 1; N <= 5; ++N)
        for (const auto& S : all_shapes(N)) {
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(encode(S));
            CHECK(lu.rank() == S.rank());
        }
}

TEST_CASE("character shapes") {
    CHECK(character_shape(3, 0, 0, -1).approx_equal(make({1, 2, 3}, {-1, -1, -1})));
    Shape a = character_shape(2, 0, 1);
    CHECK(a.tau == std::vector<int>{2, 1});
    CHECK(a.is_self_adjoint());
    Shape b = character_shape(4, 1, 1, 1, {0.3});
    CHECK(b.u[0].is_zero());
    CHECK(b.tau == std::vector<int>{1, 4, 3, 2});
    CHECK(!b.u[2].is_zero());
    CHECK(!b.u[3].is_zero());
    CHECK(b.is_self_adjoint());
    CHECK_THROWS(character_shape(3, 1, 2));
}

TEST_CASE("weight combinatorics example") {
    Shape S = make({4, 5, 3, 1, 2}, {1, 1, 1, 1, 1});
    std::vector<double> r{10, 20, 30, 40, 50};
    auto W = weight_combinatorics(S, r);
    REQUIRE(W.cycles.size() == 3);
    CHECK(W.cycles[0] == IndexSet{3});
    CHECK(W.cycles[1] == IndexSet{1, 4});
    CHECK(W.cycles[2] == IndexSet{2, 5});
    CHECK(W.w_r == std::vector<double>{10, 50, 90});
    CHECK(W.w_eps == IndexSet{3, 5});
    CHECK(W.closure({4}, {1}) == IndexSet{1, 3, 4});
    for (int k = 2; k <= 4; ++k) {
        IndexSet P = S.leading(k);
        CHECK(W.closure(S.image(P), P) == IndexSet{1, 2, 3, 4, 5});
    }
    CHECK(frak_c(S, W, 3) == std::vector<int>{5, 3});
    CHECK(frak_n(S, W, 3) == std::vector<int>{1, 2});
    CHECK(frak_n(S, W, 5).empty());
    CHECK(W.w_r_of({1, 3, 4}) == 60);
}

TEST_CASE("ideal minors") {
    auto id = ideal_minors(Shape::identity(3));
    for (const auto& p : id.vanishing) CHECK(p.I.size() == 4);
    CHECK(id.vanishing.empty());

    auto a = ideal_minors(make({2, 1}, {1, 1}));
    REQUIRE(!a.vanishing.empty());
    CHECK(a.vanishing[0] == IndexPair{{1}, {1}});
    std::size_t rank1 = 0;
    for (const auto& p : a.vanishing) rank1 += p.I.size() == 1;
    CHECK(rank1 == 1);
    CHECK(a.zsk[0] == IndexPair{{2}, {1}});

    auto b = ideal_minors(make({1, 2, 3}, {0, 1, 1}));
    std::size_t below = 0;
    for (const auto& p : b.vanishing)
        if (p.I.size() == 1) {
            CHECK(pair_cmp(p.J, p.I, {2}, {2}) < 0);
            ++below;
        }
    CHECK(below == 4);  // J = {1} with any I, plus (I,J) = ({1},{2})
    CHECK(b.zsk[0] == IndexPair{{2}, {2}});
}
