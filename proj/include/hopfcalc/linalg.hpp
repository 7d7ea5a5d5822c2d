#pragma once

// Sparse exact linear algebra over Cyc.
//
// Basis elements are opaque, totally ordered indices.  Vectors are finitely
// supported maps from indices to scalars.  Linear maps are given by their
// action on basis indices.

#include "hopfcalc/scalars.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hopfcalc {

class Index;

/// One component of an index key: an integer or a nested index.
using KeyPart = std::variant<std::int64_t, Index>;

class Index {
public:
    Index() : Index("", {}) {}
    Index(std::string tag, std::vector<KeyPart> key);

    const std::string& tag() const { return node_->tag; }
    const std::vector<KeyPart>& key() const { return node_->key; }
    std::size_t size() const { return node_->key.size(); }

    std::int64_t num(std::size_t i) const { return std::get<std::int64_t>(node_->key.at(i)); }
    const Index& sub(std::size_t i) const { return std::get<Index>(node_->key.at(i)); }

    friend int compare(const Index& a, const Index& b);
    friend bool operator<(const Index& a, const Index& b) { return compare(a, b) < 0; }
    friend bool operator==(const Index& a, const Index& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Index& a, const Index& b) { return compare(a, b) != 0; }

    std::string str() const;

private:
    struct Node {
        std::string tag;
        std::vector<KeyPart> key;
    };
    std::shared_ptr<const Node> node_;
};

inline Index::Index(std::string tag, std::vector<KeyPart> key)
    : node_(std::make_shared<const Node>(Node{std::move(tag), std::move(key)})) {}

inline int compare(const Index& a, const Index& b) {
    if (a.node_ == b.node_) return 0;
    if (int c = a.node_->tag.compare(b.node_->tag)) return c < 0 ? -1 : 1;
    const auto& ka = a.node_->key;
    const auto& kb = b.node_->key;
    const std::size_t n = std::min(ka.size(), kb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (ka[i].index() != kb[i].index()) return ka[i].index() < kb[i].index() ? -1 : 1;
        if (ka[i].index() == 0) {
            auto x = std::get<0>(ka[i]);
            auto y = std::get<0>(kb[i]);
            if (x != y) return x < y ? -1 : 1;
        } else {
            if (int c = compare(std::get<1>(ka[i]), std::get<1>(kb[i]))) return c;
        }
    }
    if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
    return 0;
}

inline std::string Index::str() const {
    if (tag() == "*" && size() == 2) return "(" + sub(0).str() + " ⊗ " + sub(1).str() + ")";
    std::string s = tag();
    if (key().empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ",";
        if (key()[i].index() == 0) s += std::to_string(num(i));
        else s += sub(i).str();
    }
    return s + ")";
}

inline Index idx(std::string tag, std::initializer_list<std::int64_t> nums) {
    std::vector<KeyPart> key;
    for (auto n : nums) key.emplace_back(n);
    return Index(std::move(tag), std::move(key));
}

/// Tensor index: the pair (a, b).
inline Index pair(const Index& a, const Index& b) { return Index("*", {a, b}); }
inline bool is_pair(const Index& i) { return i.tag() == "*" && i.size() == 2; }
inline const Index& first(const Index& p) { return p.sub(0); }
inline const Index& second(const Index& p) { return p.sub(1); }

/// Wrap an index with a tag, used for direct sums and augmented systems.
inline Index tagged(const std::string& tag, const Index& i) { return Index(tag, {i}); }

class Vec {
public:
    using Map = std::map<Index, Cyc>;

    Vec() = default;
    explicit Vec(const Index& i, Cyc c = Cyc(1)) {
        if (!c.is_zero()) terms_.emplace(i, std::move(c));
    }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Cyc coeff(const Index& i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? Cyc(0) : it->second;
    }

    void add(const Index& i, const Cyc& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(i, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void axpy(const Cyc& c, const Vec& v) {
        if (c.is_zero()) return;
        for (const auto& [i, x] : v.terms_) add(i, c * x);
    }

    Vec& operator+=(const Vec& o) {
        for (const auto& [i, x] : o.terms_) add(i, x);
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (const auto& [i, x] : o.terms_) add(i, -x);
        return *this;
    }
    Vec& operator*=(const Cyc& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [i, x] : terms_) x *= c;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator-(Vec a) { return a *= Cyc(-1); }
    friend Vec operator*(const Cyc& c, Vec v) { return v *= c; }
    friend bool operator==(const Vec& a, const Vec& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

    const Index& leading() const { return terms_.begin()->first; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [i, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (c.is_one()) s += i.str();
            else s += "(" + c.str() + ")*" + i.str();
        }
        return s;
    }

private:
    Map terms_;
};

inline Vec basis_vec(const Index& i) { return Vec(i); }

inline Vec tensor(const Vec& a, const Vec& b) {
    Vec r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) r.add(pair(i, j), x * y);
    return r;
}

/// Map every index of v through f (f must be injective on the support).
template <class F>
inline Vec relabel(const Vec& v, F&& f) {
    Vec r;
    for (const auto& [i, c] : v) r.add(f(i), c);
    return r;
}

inline Vec tag_vec(const std::string& tag, const Vec& v) {
    return relabel(v, [&](const Index& i) { return tagged(tag, i); });
}

using LinFn = std::function<Vec(const Index&)>;
using BilFn = std::function<Vec(const Index&, const Index&)>;

inline Vec apply(const LinFn& f, const Vec& v) {
    Vec r;
    for (const auto& [i, c] : v) r.axpy(c, f(i));
    return r;
}

inline Vec apply2(const BilFn& f, const Vec& a, const Vec& b) {
    Vec r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) r.axpy(x * y, f(i, j));
    return r;
}

/// f⊗g on pair indices.
/// Memoized linear map on basis indices.
inline LinFn memo_lin(LinFn f) {
    struct State {
        std::mutex mu;
        std::map<Index, Vec> memo;
    };
    auto st = std::make_shared<State>();
    return [f = std::move(f), st](const Index& i) {
        {
            std::lock_guard<std::mutex> lock(st->mu);
            auto it = st->memo.find(i);
            if (it != st->memo.end()) return it->second;
        }
        Vec v = f(i);
        std::lock_guard<std::mutex> lock(st->mu);
        st->memo.emplace(i, v);
        return v;
    };
}

/// Memoized bilinear map on basis indices.
inline BilFn memo_bil(BilFn f) {
    LinFn g = memo_lin([f = std::move(f)](const Index& p) { return f(first(p), second(p)); });
    return [g](const Index& a, const Index& b) { return g(pair(a, b)); };
}

inline LinFn tensor_map(LinFn f, LinFn g) {
    return [f = std::move(f), g = std::move(g)](const Index& p) { return tensor(f(first(p)), g(second(p))); };
}

inline LinFn identity_map() {
    return [](const Index& i) { return Vec(i); };
}

/// Linear operator with an optional finite domain and a cached matrix.
struct LinOp {
    LinFn action;
    std::optional<std::vector<Index>> domain;

    Vec operator()(const Index& i) const { return action(i); }
    Vec operator()(const Vec& v) const { return apply(action, v); }

    /// Columns of the matrix on the finite domain (computed once).
    const std::vector<Vec>& columns() const {
        if (!domain) throw std::logic_error("LinOp::columns needs a finite domain");
        if (!cache_) {
            auto cols = std::make_shared<std::vector<Vec>>();
            for (const auto& i : *domain) cols->push_back(action(i));
            cache_ = cols;
        }
        return *cache_;
    }

private:
    mutable std::shared_ptr<std::vector<Vec>> cache_;
};

/// Subspace kept in reduced row echelon form.  The pivot of a row is its
/// smallest index; every row is 1 at its pivot and 0 at all other pivots.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(const std::vector<Vec>& gens) {
        for (const auto& g : gens) insert(g);
    }

    std::size_t dim() const { return rows_.size(); }
    const std::map<Index, Vec>& rows() const { return rows_; }

    std::vector<Vec> basis() const {
        std::vector<Vec> b;
        for (const auto& [p, r] : rows_) b.push_back(r);
        return b;
    }
    std::vector<Index> pivots() const {
        std::vector<Index> p;
        for (const auto& [i, r] : rows_) p.push_back(i);
        return p;
    }

    /// Remainder of v after elimination against the rows.
    Vec reduce(Vec v) const {
        std::vector<std::pair<Index, Cyc>> hits;
        for (const auto& [i, c] : v)
            if (rows_.count(i)) hits.emplace_back(i, c);
        for (const auto& [i, c] : hits) v.axpy(-c, rows_.at(i));
        return v;
    }

    bool contains(const Vec& v) const { return reduce(v).is_zero(); }

    /// Insert v; returns true when the dimension grew.
    bool insert(const Vec& v) {
        Vec r = reduce(v);
        if (r.is_zero()) return false;
        Index piv = r.leading();
        r *= r.coeff(piv).inverse();
        for (auto& [p, row] : rows_) {
            Cyc c = row.coeff(piv);
            if (!c.is_zero()) row.axpy(-c, r);
        }
        rows_.emplace(piv, std::move(r));
        return true;
    }

    bool contains_all(const Subspace& o) const {
        for (const auto& [p, r] : o.rows_)
            if (!contains(r)) return false;
        return true;
    }

    /// Coordinates of a member with respect to the echelon basis, keyed by pivot.
    Vec coordinates(const Vec& v) const {
        Vec c;
        for (const auto& [i, x] : v)
            if (rows_.count(i)) c.add(i, x);
        return c;
    }

    /// Member with the given pivot-keyed coordinates.
    Vec combine(const Vec& coords) const {
        Vec v;
        for (const auto& [p, x] : coords) v.axpy(x, rows_.at(p));
        return v;
    }

private:
    std::map<Index, Vec> rows_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    Subspace s = a;
    for (const auto& v : b.basis()) s.insert(v);
    return s;
}

inline std::size_t intersection_dim(const Subspace& a, const Subspace& b) {
    return a.dim() + b.dim() - sum(a, b).dim();
}

struct KernelImage {
    Subspace kernel;
    Subspace image;
};

namespace detail {
inline Index img_tag(const Index& i) { return Index("0", {i}); }
inline Index dom_tag(const Index& i) { return Index("1", {i}); }

inline Subspace augmented(const LinFn& f, const std::vector<Index>& domain) {
    Subspace s;
    for (const auto& e : domain) {
        Vec row = relabel(f(e), img_tag);
        row.add(dom_tag(e), Cyc(1));
        s.insert(row);
    }
    return s;
}
} // namespace detail

/// Exact kernel and image of f restricted to a finite domain.
inline KernelImage kernel_image(const LinFn& f, const std::vector<Index>& domain) {
    Subspace aug = detail::augmented(f, domain);
    KernelImage out;
    for (const auto& [piv, row] : aug.rows()) {
        Vec imgPart, domPart;
        for (const auto& [i, c] : row) {
            if (i.tag() == "0") imgPart.add(i.sub(0), c);
            else domPart.add(i.sub(0), c);
        }
        if (piv.tag() == "0") out.image.insert(imgPart);
        else out.kernel.insert(domPart);
    }
    return out;
}

inline std::size_t rank(const LinFn& f, const std::vector<Index>& domain) {
    return kernel_image(f, domain).image.dim();
}

/// Solver prepared for repeated right-hand sides.
class LinearSolver {
public:
    LinearSolver(const LinFn& f, const std::vector<Index>& domain) : aug_(detail::augmented(f, domain)) {}

    /// A solution x of f(x) = target, or nullopt.
    std::optional<Vec> solve(const Vec& target) const {
        Vec r = aug_.reduce(relabel(target, detail::img_tag));
        Vec x;
        for (const auto& [i, c] : r) {
            if (i.tag() == "0") return std::nullopt;
            x.add(i.sub(0), -c);
        }
        return x;
    }

    /// Leading unsolvable index of the residual, if any.
    std::optional<Index> obstruction(const Vec& target) const {
        Vec r = aug_.reduce(relabel(target, detail::img_tag));
        for (const auto& [i, c] : r)
            if (i.tag() == "0") return i.sub(0);
        return std::nullopt;
    }

private:
    Subspace aug_;
};

inline std::optional<Vec> solve_linear(const LinFn& f, const Vec& target, const std::vector<Index>& domain) {
    return LinearSolver(f, domain).solve(target);
}

/// Quotient of span(ambient) by sub: representatives are the non-pivot
/// ambient indices and project reduces modulo sub.
struct Quotient {
    std::vector<Index> representatives;
    Subspace sub;
    Vec project(const Vec& v) const { return sub.reduce(v); }
    LinFn projector() const {
        return [s = sub](const Index& i) { return s.reduce(Vec(i)); };
    }
};

class LinAlgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Quotient quotient_basis(const std::vector<Index>& ambient, const Subspace& sub) {
    std::map<Index, bool> amb;
    for (const auto& i : ambient) amb[i] = true;
    for (const auto& [p, row] : sub.rows())
        for (const auto& [i, c] : row)
            if (!amb.count(i)) throw LinAlgError("quotient_basis: subspace leaves the ambient span at " + i.str());
    Quotient q;
    q.sub = sub;
    for (const auto& i : ambient)
        if (!sub.rows().count(i)) q.representatives.push_back(i);
    return q;
}

/// Matrix of f on a finite domain against a finite codomain basis, as rows of scalar strings.
inline std::vector<std::vector<std::string>> matrix_strings(const LinFn& f, const std::vector<Index>& domain,
                                                            const std::vector<Index>& codomain) {
    std::vector<std::vector<std::string>> m(codomain.size(), std::vector<std::string>(domain.size(), "0"));
    for (std::size_t j = 0; j < domain.size(); ++j) {
        Vec col = f(domain[j]);
        for (std::size_t i = 0; i < codomain.size(); ++i) m[i][j] = col.coeff(codomain[i]).str();
    }
    return m;
}

} // namespace hopfcalc
