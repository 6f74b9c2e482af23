#include "qrea/braid.hpp"

namespace qrea {

int eps_interval(const std::vector<int>& eps, int i, int j) {
    int r = 1;
    for (int k = i + 1; k <= j; ++k) r *= eps.at(k - 1);
    return r;
}

bool is_standard_form(const std::vector<int>& eps) {
    bool seen_zero = false;
    for (int e : eps) {
        if (e != 0 && e != 1 && e != -1) return false;
        if (e == 0) seen_zero = true;
        else if (seen_zero) return false;
    }
    return true;
}

void require_standard_form(const std::vector<int>& eps) {
    if (!is_standard_form(eps)) {
        throw NonStandardEpsError("eps must take values in {1,-1,0} with all nonzero entries first");
    }
}

namespace {

BraidOp build(int N, const std::vector<int>* eps) {
    if (N < 1) throw std::invalid_argument("braid operator needs N >= 1");
    BraidOp R;
    R.n = N;
    R.entries.assign(static_cast<std::size_t>(N) * N * N * N, ExactQ());
    const ExactQ gap = ExactQ::hecke_gap();
    for (int a = 1; a <= N; ++a) {
        for (int b = 1; b <= N; ++b) {
            int col = (a - 1) * N + (b - 1);
            int swapped = (b - 1) * N + (a - 1);
            R.at(swapped, col) += ExactQ::qpow(a == b ? -1 : 0);
            if (b < a) {
                int e = eps ? eps_interval(*eps, b, a) : 1;
                if (e != 0) R.at(col, col) += gap * ExactQ(e);
            }
        }
    }
    return R;
}

}  // namespace

BraidOp build_rhat(int N) { return build(N, nullptr); }

BraidOp build_rhat_eps(int N, const std::vector<int>& eps) {
    if (static_cast<int>(eps.size()) != N) throw std::invalid_argument("eps length must equal N");
    require_standard_form(eps);
    return build(N, &eps);
}

}  // namespace qrea
