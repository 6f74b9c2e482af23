#include "qrea/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace qrea {

Gaussian& Gaussian::operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Gaussian Gaussian::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero Gaussian rational");
    mpq_class n = re * re + im * im;
    return Gaussian(re / n, -im / n);
}

namespace {

std::string rat_str(const mpq_class& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

mpq_class parse_rat(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    mpq_class v;
    if (v.set_str(std::string(s), 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    }
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator");
    v.canonicalize();
    return v;
}

}  // namespace

std::string Gaussian::str() const {
    std::string out = rat_str(re);
    if (sgn(im) != 0) {
        if (sgn(im) > 0) out += "+";
        out += rat_str(im) + "*i";
    }
    return out;
}

Gaussian Gaussian::parse(std::string_view text) {
    if (text.size() >= 2 && text.substr(text.size() - 2) == "*i") {
        std::string_view body = text.substr(0, text.size() - 2);
        // split at the sign that starts the imaginary part (never at position 0)
        std::size_t cut = std::string_view::npos;
        for (std::size_t p = body.size(); p-- > 1;) {
            if (body[p] == '+' || body[p] == '-') {
                cut = p;
                break;
            }
        }
        if (cut == std::string_view::npos) return Gaussian(0, parse_rat(body));
        std::string_view re_part = body.substr(0, cut);
        std::string_view im_part = body.substr(body[cut] == '+' ? cut + 1 : cut);
        return Gaussian(parse_rat(re_part), parse_rat(im_part));
    }
    return Gaussian(parse_rat(text));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("q-exponent overflow");
    return r;
}

void check_q0(double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::domain_error("q0 must lie in (0,1)");
}

ExactQ::ExactQ(long v) {
    if (v != 0) terms_.emplace_back(0, Gaussian(v));
}

ExactQ::ExactQ(const Gaussian& c) {
    if (!c.is_zero()) terms_.emplace_back(0, c);
}

ExactQ ExactQ::monomial(const Gaussian& c, std::int64_t e) {
    ExactQ r;
    if (!c.is_zero()) r.terms_.emplace_back(e, c);
    return r;
}

ExactQ ExactQ::neg_qpow(std::int64_t e) {
    return monomial(Gaussian((e % 2 == 0) ? 1 : -1), e);
}

ExactQ ExactQ::hecke_gap() {
    ExactQ r;
    r.terms_.emplace_back(-1, Gaussian(1));
    r.terms_.emplace_back(1, Gaussian(-1));
    return r;
}

std::int64_t ExactQ::min_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero has no exponent");
    return terms_.front().first;
}

std::int64_t ExactQ::max_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero has no exponent");
    return terms_.back().first;
}

Gaussian ExactQ::coefficient(std::int64_t e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, std::int64_t x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return Gaussian();
}

ExactQ ExactQ::operator-() const {
    ExactQ r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

void ExactQ::add_scaled(const ExactQ& o, int sign) {
    if (o.terms_.empty()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.emplace_back(b->first, sign > 0 ? b->second : -b->second);
            ++b;
        } else {
            Gaussian c = std::move(a->second);
            if (sign > 0) c += b->second; else c -= b->second;
            if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

ExactQ& ExactQ::operator+=(const ExactQ& o) {
    add_scaled(o, 1);
    return *this;
}

ExactQ& ExactQ::operator-=(const ExactQ& o) {
    add_scaled(o, -1);
    return *this;
}

ExactQ operator*(const ExactQ& a, const ExactQ& b) {
    ExactQ r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (b.terms_.size() == 1) {
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_) {
            r.terms_.emplace_back(checked_add(t.first, b.terms_[0].first), t.second * b.terms_[0].second);
        }
        return r;
    }
    std::map<std::int64_t, Gaussian> acc;
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            acc[checked_add(x.first, y.first)] += x.second * y.second;
        }
    }
    for (auto& [e, c] : acc) {
        if (!c.is_zero()) r.terms_.emplace_back(e, std::move(c));
    }
    return r;
}

ExactQ& ExactQ::operator*=(const ExactQ& o) {
    *this = *this * o;
    return *this;
}

bool operator==(const ExactQ& a, const ExactQ& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) {
            return false;
        }
    }
    return true;
}

ExactQ ExactQ::star() const {
    ExactQ r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

ExactQ ExactQ::monomial_inverse() const {
    if (terms_.size() != 1) throw std::domain_error("inverse requested for a non-monomial");
    if (terms_[0].first == INT64_MIN) throw std::overflow_error("q-exponent overflow");
    return monomial(terms_[0].second.inverse(), -terms_[0].first);
}

FloatC ExactQ::eval(double q0) const {
    check_q0(q0);
    FloatC s = 0.0;
    for (const auto& [e, c] : terms_) {
        s += c.to_complex() * std::pow(q0, static_cast<double>(e));
    }
    return s;
}

std::string ExactQ::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.str() + "*q^" + std::to_string(e);
    }
    return out;
}

ExactQ ExactQ::parse(std::string_view text) {
    ExactQ r;
    if (text == "0") return r;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t sep = text.find(" + ", start);
        std::string_view term = text.substr(start, sep == std::string_view::npos ? text.npos : sep - start);
        std::size_t star = term.rfind("*q^");
        if (star == std::string_view::npos) {
            throw std::invalid_argument("malformed ExactQ term '" + std::string(term) + "'");
        }
        Gaussian c = Gaussian::parse(term.substr(0, star));
        std::string exp_text(term.substr(star + 3));
        std::size_t used = 0;
        long long e = std::stoll(exp_text, &used);
        if (used != exp_text.size()) throw std::invalid_argument("malformed exponent '" + exp_text + "'");
        r += monomial(c, e);
        if (sep == std::string_view::npos) break;
        start = sep + 3;
    }
    return r;
}

std::size_t ExactQ::hash() const {
    std::size_t h = terms_.size();
    for (const auto& [e, c] : terms_) {
        h = h * 1000003u ^ std::hash<std::int64_t>()(e);
        h = h * 1000003u ^ std::hash<std::string>()(c.re.get_str());
        h = h * 1000003u ^ std::hash<std::string>()(c.im.get_str());
    }
    return h;
}

}  // namespace qrea
