#include <algorithm>
#include <stdexcept>

#include "qrea/rea.hpp"

namespace qrea {

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto g : w) h = (h ^ g) * 1099511628211ull;
    return h ^ w.size();
}

void NCPoly::add(const Word& w, const ExactQ& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void NCPoly::add(const NCPoly& p, const ExactQ& scale) {
    for (const auto& [w, c] : p.terms) add(w, c * scale);
}

NCPoly NCPoly::scaled(const ExactQ& c) const {
    NCPoly r;
    r.n = n;
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms) r.terms.emplace(w, v * c);
    return r;
}

std::string NCPoly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (auto g : w) {
            out += "*Z[" + std::to_string(g / n + 1) + "," + std::to_string(g % n + 1) + "]";
        }
    }
    return out;
}

Rea::Rea(int n) : n_(n) {
    if (n < 1 || n > 15) throw std::invalid_argument("REA rank out of range");
    const int g = n * n;
    rules_.assign(static_cast<std::size_t>(g) * g, NCPoly());
    rule_ready_.assign(rules_.size(), false);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < a; ++b) rule(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
}

std::uint8_t Rea::gen(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("generator index out of range");
    return static_cast<std::uint8_t>((i - 1) * n_ + (j - 1));
}

NCPoly Rea::one() const {
    NCPoly p;
    p.n = n_;
    p.terms.emplace(Word{}, ExactQ(1));
    return p;
}

NCPoly Rea::generator(int i, int j) const {
    NCPoly p;
    p.n = n_;
    p.terms.emplace(Word{gen(i, j)}, ExactQ(1));
    return p;
}

std::map<Word, ExactQ> Rea::relation(int i, int j, int k, int l) const {
    auto d = [](int a, int b) { return a == b ? 1 : 0; };
    const ExactQ h = ExactQ::hecke_gap();
    std::map<Word, ExactQ> t;
    auto add = [&](int a, int b, int c, int e, const ExactQ& v) { t[Word{gen(a, b), gen(c, e)}] += v; };
    add(i, j, k, l, ExactQ::qpow(-d(i, k) - d(j, k)));
    if (k < i) add(k, j, i, l, h * ExactQ::qpow(-d(i, j)));
    if (j == k)
        for (int p = 1; p < j; ++p) add(i, p, p, l, h * ExactQ::qpow(-d(i, j)));
    if (i == j && k < i)
        for (int p = 1; p < i; ++p) add(k, p, p, l, h * h);
    add(k, l, i, j, -ExactQ::qpow(-d(i, l) - d(j, l)));
    if (l < j) add(k, j, i, l, -(h * ExactQ::qpow(-d(i, j))));
    if (i == l)
        for (int p = 1; p < i; ++p) add(k, p, p, j, -(h * ExactQ::qpow(-d(i, j))));
    if (i == j && l < j)
        for (int p = 1; p < j; ++p) add(k, p, p, l, -(h * h));
    for (auto it = t.begin(); it != t.end();) {
        if (it->second.is_zero()) it = t.erase(it); else ++it;
    }
    return t;
}

const NCPoly& Rea::rule(std::uint8_t g1, std::uint8_t g2) const {
    const std::size_t slot = static_cast<std::size_t>(g1) * n_ * n_ + g2;
    if (rule_ready_[slot]) return rules_[slot];
    // Only reached while the constructor fills the table.
    auto [i, j] = indices(g1);
    auto [k, l] = indices(g2);
    auto rel = relation(i, j, k, l);
    Word lead{g1, g2};
    auto it = rel.find(lead);
    if (it == rel.end()) throw std::logic_error("relation does not contain its leading product");
    ExactQ scale = -it->second.monomial_inverse();
    rel.erase(it);
    NCPoly res;
    res.n = n_;
    std::size_t steps = 0;
    for (const auto& [w, c] : rel) res.add(word_nf(w, steps), c * scale);
    auto& self = const_cast<Rea&>(*this);
    self.rules_[slot] = std::move(res);
    self.rule_ready_[slot] = true;
    return rules_[slot];
}

bool Rea::is_normal(const Word& w) const {
    for (std::size_t p = 0; p + 1 < w.size(); ++p)
        if (w[p] > w[p + 1]) return false;
    return true;
}

NCPoly Rea::compute_word_nf(const Word& w, std::size_t& steps) const {
    NCPoly res;
    res.n = n_;
    std::size_t p = 0;
    while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
    if (p + 1 >= w.size()) {
        res.terms.emplace(w, ExactQ(1));
        return res;
    }
    if (++steps > kStepBudget) {
        throw RewriteBudgetExceeded("normal form exceeded the rewrite-step budget");
    }
    const NCPoly& r = rule(w[p], w[p + 1]);
    for (const auto& [mid, c] : r.terms) {
        Word next(w.begin(), w.begin() + static_cast<long>(p));
        next.insert(next.end(), mid.begin(), mid.end());
        next.insert(next.end(), w.begin() + static_cast<long>(p) + 2, w.end());
        res.add(word_nf(next, steps), c);
    }
    return res;
}

const NCPoly& Rea::word_nf(const Word& w, std::size_t& steps) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(w);
        if (it != memo_.end()) return *it->second;
    }
    auto value = std::make_unique<NCPoly>(compute_word_nf(w, steps));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(w, std::move(value));
    return *it->second;
}

NCPoly Rea::word(const Word& w) const {
    std::size_t steps = 0;
    return word_nf(w, steps);
}

NCPoly Rea::normal_form(const NCPoly& p) const {
    NCPoly res;
    res.n = n_;
    std::size_t steps = 0;
    for (const auto& [w, c] : p.terms) {
        if (is_normal(w)) res.add(w, c);
        else res.add(word_nf(w, steps), c);
    }
    return res;
}

NCPoly Rea::normal_form_randomized(const NCPoly& p, std::mt19937_64& rng) const {
    std::map<Word, ExactQ> work(p.terms.begin(), p.terms.end());
    NCPoly done;
    done.n = n_;
    std::size_t steps = 0;
    while (!work.empty()) {
        // pick a random pending word, then a random descent in it
        std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
        auto it = work.begin();
        std::advance(it, static_cast<long>(pick(rng)));
        Word w = it->first;
        ExactQ c = it->second;
        work.erase(it);
        if (c.is_zero()) continue;
        std::vector<std::size_t> descents;
        for (std::size_t q = 0; q + 1 < w.size(); ++q)
            if (w[q] > w[q + 1]) descents.push_back(q);
        if (descents.empty()) {
            done.add(w, c);
            continue;
        }
        if (++steps > kStepBudget) throw RewriteBudgetExceeded("randomized normal form exceeded the budget");
        std::uniform_int_distribution<std::size_t> pd(0, descents.size() - 1);
        std::size_t q = descents[pd(rng)];
        for (const auto& [mid, rc] : rule(w[q], w[q + 1]).terms) {
            Word next(w.begin(), w.begin() + static_cast<long>(q));
            next.insert(next.end(), mid.begin(), mid.end());
            next.insert(next.end(), w.begin() + static_cast<long>(q) + 2, w.end());
            auto f = work.find(next);
            ExactQ add = c * rc;
            if (f == work.end()) work.emplace(next, add);
            else {
                f->second += add;
                if (f->second.is_zero()) work.erase(f);
            }
        }
    }
    return done;
}

NCPoly Rea::mul(const NCPoly& a, const NCPoly& b) const {
    NCPoly res;
    res.n = n_;
    std::size_t steps = 0;
    for (const auto& [wa, ca] : a.terms) {
        for (const auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            ExactQ c = ca * cb;
            if (is_normal(w)) res.add(w, c);
            else res.add(word_nf(w, steps), c);
        }
    }
    return res;
}

NCPoly Rea::commutator(const NCPoly& a, const NCPoly& b) const {
    NCPoly r = mul(a, b);
    r.add(mul(b, a), ExactQ(-1));
    return r;
}

NCPoly Rea::star(const NCPoly& p) const {
    NCPoly free;
    free.n = n_;
    for (const auto& [w, c] : p.terms) {
        Word s;
        s.reserve(w.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            auto [i, j] = indices(*it);
            s.push_back(gen(j, i));
        }
        free.add(s, c.star());
    }
    return normal_form(free);
}

std::shared_ptr<const Rea> rea_for(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const Rea>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    return cache.emplace(n, std::make_shared<const Rea>(n)).first->second;
}

}  // namespace qrea
