#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrea/braid.hpp"

using namespace qrea;

namespace {
int idx(int N, int i, int j) { return (i - 1) * N + (j - 1); }
}

TEST_CASE("R-hat action for N=2") {
    BraidOp R = build_rhat(2);
    const ExactQ qi = ExactQ::qpow(-1), one(1), gap = ExactQ::hecke_gap();
    CHECK(R.at(idx(2, 1, 1), idx(2, 1, 1)) == qi);
    CHECK(R.at(idx(2, 2, 1), idx(2, 1, 2)) == one);
    CHECK(R.at(idx(2, 1, 2), idx(2, 1, 2)).is_zero());
    CHECK(R.at(idx(2, 1, 2), idx(2, 2, 1)) == one);
    CHECK(R.at(idx(2, 2, 1), idx(2, 2, 1)) == gap);
    CHECK(R.at(idx(2, 2, 2), idx(2, 2, 2)) == qi);
    BraidOp R1 = build_rhat(1);
    CHECK(R1.entries.size() == 1);
    CHECK(R1.entries[0] == qi);
    CHECK_THROWS(build_rhat(0));
}

TEST_CASE("eps-deformed operator") {
    for (int N = 1; N <= 4; ++N) {
        BraidOp a = build_rhat(N), b = build_rhat_eps(N, std::vector<int>(N, 1));
        CHECK(a.entries == b.entries);
    }
    BraidOp m = build_rhat_eps(2, {1, -1});
    CHECK(m.at(idx(2, 2, 1), idx(2, 2, 1)) == -ExactQ::hecke_gap());
    CHECK(m.at(idx(2, 1, 2), idx(2, 2, 1)) == ExactQ(1));
    BraidOp z = build_rhat_eps(2, {1, 0});
    CHECK(z.at(idx(2, 2, 1), idx(2, 2, 1)).is_zero());
    CHECK_THROWS_AS(build_rhat_eps(2, {0, 1}), NonStandardEpsError);
    CHECK_THROWS_AS(build_rhat_eps(3, {1, 2, 1}), NonStandardEpsError);
}

TEST_CASE("braid, Hecke and self-adjointness, N <= 4") {
    for (int N = 1; N <= 4; ++N) {
        for (const char* id : {"braid", "hecke", "selfadjoint"}) {
            auto rep = verify_braid(id, N);
            INFO(id << " N=" << N);
            CHECK(rep.pass());
        }
    }
}

TEST_CASE("minor coefficient tables") {
    // rank-1 table is R-hat itself
    for (int N = 1; N <= 3; ++N) {
        auto T = minor_coeffs(N, 1, 1);
        BraidOp R = build_rhat(N);
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                for (int a = 1; a <= N; ++a)
                    for (int b = 1; b <= N; ++b) {
                        // R̂ e_i⊗e_{b} has e_a⊗e_j component R̂^{ij}_{ab}
                        CHECK(T->coeff({i}, {j}, {a}, {b}) == R.at(idx(N, a, j), idx(N, i, b)));
                    }
    }
    auto T = minor_coeffs(3, 2, 2);
    CHECK(T->coeff({1, 2}, {1, 2}, {2, 3}, {2, 3}) == ExactQ::qpow(-1));
    CHECK(T->inverse_coeff({1, 2}, {1, 2}, {2, 3}, {2, 3}) == ExactQ::qpow(1));
    CHECK(T->coeff({1, 2}, {1, 3}, {1, 3}, {1, 2}).is_zero());  // J not below I
}

TEST_CASE("table invariants for N <= 4") {
    for (int N = 1; N <= 4; ++N)
        for (const char* id : {"coeff-support", "coeff-diagonal", "coeff-inverse"}) {
            auto rep = verify_braid(id, N);
            INFO(id << " N=" << N << " first failure: " << (rep.pass() ? "" : rep.failures[0].witness));
            CHECK(rep.pass());
        }
}

TEST_CASE("golden dump of the N=2 rank-(1,1) table") {
    std::string d = minor_coeffs(2, 1, 1)->dump();
    CHECK(d.find("fwd 2|1|2|1 = 1/1*q^-1 + -1/1*q^1") != std::string::npos);
    CHECK(d.find("inv 2|1|2|1 = -1/1*q^-1 + 1/1*q^1") != std::string::npos);
}
