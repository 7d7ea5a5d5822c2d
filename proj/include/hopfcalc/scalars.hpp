#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).
//
// An element of order M is stored as its coefficient vector in the power
// basis 1, z, ..., z^(phi(M)-1), reduced modulo the M-th cyclotomic
// polynomial.  Operands of different orders are lifted to the lcm order.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hopfcalc {

class ScalarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct CycloData {
    int order = 1;
    int phi = 1;
    std::vector<mpq_class> poly;                    // Phi_M, low to high, monic
    std::vector<std::vector<mpq_class>> reductions; // x^(phi+i) mod Phi_M
};

inline std::vector<mpq_class> poly_divide_exact(std::vector<mpq_class> num,
                                                const std::vector<mpq_class>& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {mpq_class(0)};
    std::vector<mpq_class> quot(num.size() - dn, mpq_class(0));
    for (std::size_t i = num.size(); i-- > dn;) {
        mpq_class c = num[i] / den[dn];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quot;
}

inline const CycloData& cyclo(int M);

inline CycloData make_cyclo(int M) {
    CycloData d;
    d.order = M;
    std::vector<mpq_class> num(static_cast<std::size_t>(M) + 1, mpq_class(0));
    num[0] = -1;
    num[static_cast<std::size_t>(M)] = 1;
    for (int e = 1; e < M; ++e) {
        if (M % e != 0) continue;
        num = poly_divide_exact(num, cyclo(e).poly);
    }
    d.poly = num;
    d.phi = static_cast<int>(num.size()) - 1;
    const int phi = d.phi;
    // x^phi = -(poly[0] + ... + poly[phi-1] x^(phi-1))
    std::vector<mpq_class> cur(static_cast<std::size_t>(phi));
    for (int i = 0; i < phi; ++i) cur[static_cast<std::size_t>(i)] = -d.poly[static_cast<std::size_t>(i)];
    for (int k = 0; k < phi; ++k) {
        d.reductions.push_back(cur);
        std::vector<mpq_class> next(static_cast<std::size_t>(phi), mpq_class(0));
        mpq_class top = cur[static_cast<std::size_t>(phi - 1)];
        for (int i = phi - 1; i >= 1; --i) next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
        if (top != 0)
            for (int i = 0; i < phi; ++i) next[static_cast<std::size_t>(i)] -= top * d.poly[static_cast<std::size_t>(i)];
        cur = std::move(next);
    }
    return d;
}

inline const CycloData& cyclo(int M) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloData>> cache;
    if (M < 1) throw ScalarError("cyclotomic order must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(M);
        if (it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<CycloData>(make_cyclo(M));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(M, std::move(built));
    return *it->second;
}

inline std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

} // namespace detail

class Cyc {
public:
    Cyc() : d_(&detail::cyclo(1)), c_(1, mpq_class(0)) {}
    Cyc(long v) : d_(&detail::cyclo(1)), c_(1, mpq_class(v)) {}  // NOLINT
    Cyc(int v) : Cyc(static_cast<long>(v)) {}                      // NOLINT
    Cyc(const mpq_class& v) : d_(&detail::cyclo(1)), c_(1, v) { c_[0].canonicalize(); } // NOLINT
    Cyc(long num, long den) : Cyc(mpq_class(num, den)) {
        if (den == 0) throw ScalarError("zero denominator");
        c_[0].canonicalize();
    }

    static Cyc from_coeffs(int M, std::vector<mpq_class> coeffs) {
        Cyc r;
        r.d_ = &detail::cyclo(M);
        r.c_ = reduce(*r.d_, std::move(coeffs));
        return r;
    }

    int order() const { return d_->order; }
    int degree() const { return d_->phi; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Cyc lifted(int L) const {
        if (L == order()) return *this;
        if (L % order() != 0) throw ScalarError("cannot lift to a non-multiple order");
        const int step = L / order();
        std::vector<mpq_class> p(static_cast<std::size_t>((degree() - 1) * step + 1), mpq_class(0));
        for (int i = 0; i < degree(); ++i) p[static_cast<std::size_t>(i * step)] = c_[static_cast<std::size_t>(i)];
        return from_coeffs(L, std::move(p));
    }

    Cyc operator-() const {
        Cyc r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Cyc& operator+=(const Cyc& o) {
        if (o.order() == order()) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
            return *this;
        }
        const int L = std::lcm(order(), o.order());
        Cyc a = lifted(L);
        a += o.lifted(L);
        return *this = a;
    }
    Cyc& operator-=(const Cyc& o) { return *this += -o; }

    Cyc& operator*=(const Cyc& o) {
        if (o.order() != order()) {
            const int L = std::lcm(order(), o.order());
            Cyc a = lifted(L);
            a *= o.lifted(L);
            return *this = a;
        }
        const int phi = degree();
        if (phi == 1) {
            c_[0] *= o.c_[0];
            return *this;
        }
        std::vector<mpq_class> prod(static_cast<std::size_t>(2 * phi - 1), mpq_class(0));
        for (int i = 0; i < phi; ++i) {
            if (c_[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < phi; ++j) {
                if (o.c_[static_cast<std::size_t>(j)] == 0) continue;
                prod[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
            }
        }
        c_ = fold(*d_, std::move(prod));
        return *this;
    }

    Cyc inverse() const {
        if (is_zero()) throw ScalarError("division by zero");
        const int phi = degree();
        if (phi == 1) return from_coeffs(order(), {mpq_class(1) / c_[0]});
        // Solve (this * y) = 1 via the multiplication matrix.
        std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(phi),
                                              std::vector<mpq_class>(static_cast<std::size_t>(phi) + 1));
        for (int j = 0; j < phi; ++j) {
            std::vector<mpq_class> e(static_cast<std::size_t>(phi), mpq_class(0));
            e[static_cast<std::size_t>(j)] = 1;
            Cyc col = *this * from_coeffs(order(), e);
            for (int i = 0; i < phi; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.c_[static_cast<std::size_t>(i)];
        }
        m[0][static_cast<std::size_t>(phi)] = 1;
        for (int col = 0; col < phi; ++col) {
            int piv = col;
            while (m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
            mpq_class inv = mpq_class(1) / m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (auto& x : m[static_cast<std::size_t>(col)]) x *= inv;
            for (int r = 0; r < phi; ++r) {
                if (r == col) continue;
                mpq_class f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                if (f == 0) continue;
                for (int k = 0; k <= phi; ++k)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
            }
        }
        std::vector<mpq_class> y(static_cast<std::size_t>(phi));
        for (int i = 0; i < phi; ++i) y[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(phi)];
        return from_coeffs(order(), std::move(y));
    }

    Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }

    Cyc pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyc result = from_coeffs(order(), {mpq_class(1)});
        Cyc base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
    friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (a.order() == b.order()) return a.c_ == b.c_;
        const int L = std::lcm(a.order(), b.order());
        return a.lifted(L).c_ == b.lifted(L).c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = 0; k < degree(); ++k) {
            const mpq_class& q = c_[static_cast<std::size_t>(k)];
            if (q == 0) continue;
            std::string term;
            if (k == 0) {
                term = detail::rational_str(q);
            } else {
                std::string mono = "z" + std::to_string(order()) + "^" + std::to_string(k);
                if (q == 1) term = mono;
                else if (q == -1) term = "-" + mono;
                else term = detail::rational_str(q) + "*" + mono;
            }
            if (out.empty()) out = term;
            else if (term[0] == '-') out += " - " + term.substr(1);
            else out += " + " + term;
        }
        return out;
    }

    static Cyc parse(std::string_view s);

private:
    static std::vector<mpq_class> fold(const detail::CycloData& d, std::vector<mpq_class> p) {
        const auto phi = static_cast<std::size_t>(d.phi);
        std::vector<mpq_class> r(phi, mpq_class(0));
        for (std::size_t i = 0; i < p.size() && i < phi; ++i) r[i] = p[i];
        for (std::size_t i = phi; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            const auto& red = d.reductions[i - phi];
            for (std::size_t j = 0; j < phi; ++j)
                if (red[j] != 0) r[j] += p[i] * red[j];
        }
        return r;
    }

    static std::vector<mpq_class> reduce(const detail::CycloData& d, std::vector<mpq_class> p) {
        for (auto& x : p) x.canonicalize();
        const auto phi = static_cast<std::size_t>(d.phi);
        if (p.size() <= 2 * phi - 1) {
            if (p.size() < phi) p.resize(phi, mpq_class(0));
            return fold(d, std::move(p));
        }
        // long division by the monic cyclotomic polynomial
        for (std::size_t i = p.size(); i-- > phi;) {
            mpq_class c = p[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= phi; ++j) p[i - phi + j] -= c * d.poly[j];
        }
        p.resize(phi);
        return p;
    }

    const detail::CycloData* d_;
    std::vector<mpq_class> c_;
};

/// zeta_M^k reduced modulo Phi_M.
inline Cyc root_of_unity(int M, long k) {
    if (M < 1) throw ScalarError("root_of_unity: order must be positive");
    long e = k % M;
    if (e < 0) e += M;
    std::vector<mpq_class> p(static_cast<std::size_t>(e) + 1, mpq_class(0));
    p[static_cast<std::size_t>(e)] = 1;
    return Cyc::from_coeffs(M, std::move(p));
}

/// Smallest d >= 1 with x^d = 1, or 0 when x is not a root of unity of order dividing maxOrder.
inline long multiplicative_order(const Cyc& x, long maxOrder) {
    if (x.is_zero()) return 0;
    Cyc p = x;
    for (long d = 1; d <= maxOrder; ++d) {
        if (p.is_one()) return d;
        p *= x;
    }
    return 0;
}

inline Cyc Cyc::parse(std::string_view s) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_int = [&](bool allowSign) -> mpz_class {
        skip();
        std::string digits;
        if (allowSign && i < s.size() && (s[i] == '-' || s[i] == '+')) digits += s[i++];
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        if (digits.empty() || digits == "-" || digits == "+")
            throw ScalarError("malformed scalar: '" + std::string(s) + "'");
        if (digits[0] == '+') digits.erase(0, 1);
        return mpz_class(digits);
    };
    Cyc total;
    bool first = true;
    skip();
    if (i == s.size()) throw ScalarError("empty scalar");
    while (true) {
        skip();
        int sign = 1;
        if (!first) {
            if (i >= s.size()) break;
            if (s[i] == '+') ++i;
            else if (s[i] == '-') { sign = -1; ++i; }
            else throw ScalarError("malformed scalar: '" + std::string(s) + "'");
            skip();
        }
        if (i < s.size() && s[i] == '-') { sign = -sign; ++i; skip(); }
        mpq_class coef(1);
        bool haveCoef = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            mpz_class num = read_int(false);
            mpz_class den(1);
            skip();
            if (i < s.size() && s[i] == '/') { ++i; den = read_int(false); }
            if (den == 0) throw ScalarError("zero denominator in '" + std::string(s) + "'");
            coef = mpq_class(num, den);
            coef.canonicalize();
            haveCoef = true;
            skip();
            if (i < s.size() && s[i] == '*') { ++i; skip(); }
            else if (!(i < s.size() && s[i] == 'z')) {
                total += Cyc(mpq_class(sign * coef));
                first = false;
                continue;
            }
        }
        if (i < s.size() && s[i] == 'z') {
            ++i;
            mpz_class M = read_int(false);
            long k = 1;
            skip();
            if (i < s.size() && s[i] == '^') { ++i; k = read_int(true).get_si(); }
            if (M <= 0 || M > 100000) throw ScalarError("bad cyclotomic order in '" + std::string(s) + "'");
            Cyc term = root_of_unity(static_cast<int>(M.get_si()), k);
            term *= Cyc(mpq_class(sign * coef));
            total += term;
        } else if (!haveCoef) {
            throw ScalarError("malformed scalar: '" + std::string(s) + "'");
        }
        first = false;
    }
    return total;
}

} // namespace hopfcalc
