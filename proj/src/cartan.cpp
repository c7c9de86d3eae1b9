#include "bosonext/cartan.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "bosonext/error.hpp"

namespace bosonext {

// ---------------------------------------------------------------- RootVec

RootVec RootVec::simple(std::size_t n, int i) {
    RootVec r(n);
    r.c.at(static_cast<std::size_t>(i)) = 1;
    return r;
}

bool RootVec::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

RootVec& RootVec::operator+=(const RootVec& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

RootVec& RootVec::operator-=(const RootVec& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

RootVec RootVec::operator-() const {
    RootVec r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

RootVec operator*(int s, RootVec a) {
    for (auto& x : a.c) x *= s;
    return a;
}

std::string to_string(const RootVec& b) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const RootVec& b) { return os << to_string(b); }

int ht(const RootVec& b) {
    int h = 0;
    for (int x : b.c) h += std::abs(x);
    return h;
}

RootVec norm_abs(const RootVec& b) {
    RootVec r = b;
    for (auto& x : r.c) x = std::abs(x);
    return r;
}

bool leq_Q(const RootVec& a, const RootVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] - a[i] < 0) return false;
    return true;
}

bool is_nonnegative(const RootVec& b) {
    return std::all_of(b.c.begin(), b.c.end(), [](int x) { return x >= 0; });
}

// ---------------------------------------------------------------- CartanDatum

CartanDatum::CartanDatum(std::vector<std::vector<int>> c, std::vector<int> d, std::string name)
    : n_(c.size()), c_(std::move(c)), d_(std::move(d)), name_(std::move(name)) {
    if (n_ == 0) throw Error(ErrorCode::InvalidCartan, "empty Cartan matrix");
    if (d_.size() != n_) throw Error(ErrorCode::InvalidCartan, "symmetrizer length differs from rank");
    for (std::size_t i = 0; i < n_; ++i) {
        if (c_[i].size() != n_) throw Error(ErrorCode::InvalidCartan, "Cartan matrix is not square");
        if (d_[i] <= 0) throw Error(ErrorCode::InvalidCartan, "symmetrizer entries must be positive");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (c_[i][i] != 2) throw Error(ErrorCode::InvalidCartan, "diagonal entries must be 2");
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            if (c_[i][j] > 0) throw Error(ErrorCode::InvalidCartan, "off-diagonal entries must be <= 0");
            if ((c_[i][j] == 0) != (c_[j][i] == 0))
                throw Error(ErrorCode::InvalidCartan, "c_ij = 0 must match c_ji = 0");
            if (d_[i] * c_[i][j] != d_[j] * c_[j][i])
                throw Error(ErrorCode::InvalidCartan, "d_i c_ij is not symmetric");
        }
    }
}

CartanDatum CartanDatum::preset(const std::string& name) {
    auto bad = [&] { return Error(ErrorCode::InvalidCartan, "unknown Cartan type '" + name + "'"); };
    if (name == "A1(1)") return CartanDatum({{2, -2}, {-2, 2}}, {1, 1}, name);
    if (name.size() < 2) throw bad();
    char family = name[0];
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw bad();
    } catch (const std::logic_error&) {
        throw bad();
    }
    if (n < 1 || n > 12) throw bad();
    auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<int>> c(un, std::vector<int>(un, 0));
    std::vector<int> d(un, 1);
    for (std::size_t i = 0; i < un; ++i) c[i][i] = 2;
    auto link = [&](std::size_t i, std::size_t j) { c[i][j] = c[j][i] = -1; };
    switch (family) {
    case 'A':
        for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
        break;
    case 'B':
        if (n < 2) throw bad();
        for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
        for (std::size_t i = 0; i + 1 < un; ++i) d[i] = 2;
        c[un - 2][un - 1] = -1;
        c[un - 1][un - 2] = -2;
        break;
    case 'C':
        if (n < 2) throw bad();
        for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
        d[un - 1] = 2;
        c[un - 2][un - 1] = -2;
        c[un - 1][un - 2] = -1;
        break;
    case 'D':
        if (n < 4) throw bad();
        for (std::size_t i = 0; i + 2 < un; ++i) link(i, i + 1);
        link(un - 3, un - 1);
        break;
    case 'E':
        if (n < 6 || n > 8) throw bad();
        link(0, 2);
        link(1, 3);
        for (std::size_t i = 2; i + 1 < un; ++i) link(i, i + 1);
        break;
    case 'F':
        if (n != 4) throw bad();
        return CartanDatum({{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}}, {2, 2, 1, 1}, name);
    case 'G':
        if (n != 2) throw bad();
        return CartanDatum({{2, -3}, {-1, 2}}, {1, 3}, name);
    default:
        throw bad();
    }
    return CartanDatum(std::move(c), std::move(d), name);
}

CartanDatum CartanDatum::parse(const std::string& text, const std::string& name) {
    std::istringstream is(text);
    long n = 0;
    if (!(is >> n) || n <= 0 || n > 64) throw Error(ErrorCode::InvalidCartan, "bad rank line");
    auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<int>> c(un, std::vector<int>(un));
    std::vector<int> d(un);
    for (auto& row : c)
        for (auto& x : row)
            if (!(is >> x)) throw Error(ErrorCode::InvalidCartan, "truncated Cartan matrix");
    for (auto& x : d)
        if (!(is >> x)) throw Error(ErrorCode::InvalidCartan, "truncated symmetrizer row");
    std::string rest;
    if (is >> rest) throw Error(ErrorCode::InvalidCartan, "trailing data after symmetrizer row");
    return CartanDatum(std::move(c), std::move(d), name);
}

CartanDatum CartanDatum::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidCartan, "cannot open Cartan file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string CartanDatum::signature() const {
    std::ostringstream os;
    os << n_;
    for (const auto& row : c_)
        for (int x : row) os << ' ' << x;
    os << ';';
    for (int x : d_) os << ' ' << x;
    return os.str();
}

int CartanDatum::form(const RootVec& a, const RootVec& b) const {
    int s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) s += a[i] * b[j] * d_[i] * c_[i][j];
    }
    return s;
}

int CartanDatum::pairing(int i, const RootVec& b) const {
    int s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += c_[static_cast<std::size_t>(i)][j] * b[j];
    return s;
}

int CartanDatum::N_quad(const RootVec& a) const {
    // (a, a) is always even: diagonal terms are 2 d_i a_i^2, off-diagonal terms come in pairs.
    return form(a, a) / 2;
}

RatFunc CartanDatum::zeta_pow(const RootVec& b, int sign) const {
    RatFunc r(1);
    for (std::size_t i = 0; i < n_; ++i) {
        if (b[i] < 0) throw Error(ErrorCode::NegativeCoordinate, "zeta_pow needs a nonnegative weight");
        if (b[i] == 0) continue;
        RatFunc z = RatFunc(1) - RatFunc::q_pow(2 * sign * d_[i]);
        r *= z.pow(b[i]);
    }
    return r;
}

RatFunc CartanDatum::qq_pow(const RootVec& b) const {
    int e = 0;
    for (std::size_t i = 0; i < n_; ++i) e += d_[i] * b[i];
    return RatFunc::q_pow(e);
}

RootVec CartanDatum::alpha_level(int i, int m) const {
    RootVec r = simple(i);
    if (m % 2 != 0) r = -r;
    return r;
}

RootVec CartanDatum::reflect(int i, const RootVec& b) const {
    RootVec r = b;
    r[static_cast<std::size_t>(i)] -= pairing(i, b);
    return r;
}

bool CartanDatum::is_finite_type() const {
    // Leading principal minors of the symmetrized matrix must be positive.
    std::vector<std::vector<mpq_class>> b(n_, std::vector<mpq_class>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) b[i][j] = d_[i] * c_[i][j];
    for (std::size_t k = 0; k < n_; ++k) {
        if (b[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n_; ++i) {
            mpq_class f = b[i][k] / b[k][k];
            for (std::size_t j = k; j < n_; ++j) b[i][j] -= f * b[k][j];
        }
    }
    return true;
}

std::vector<RootVec> CartanDatum::positive_roots() const {
    if (!is_finite_type()) throw Error(ErrorCode::UnsupportedType, "positive roots need a finite-type datum");
    std::set<RootVec> seen;
    std::vector<RootVec> frontier;
    for (std::size_t i = 0; i < n_; ++i) {
        seen.insert(simple(static_cast<int>(i)));
        frontier.push_back(simple(static_cast<int>(i)));
    }
    while (!frontier.empty()) {
        std::vector<RootVec> next;
        for (const auto& b : frontier) {
            for (std::size_t i = 0; i < n_; ++i) {
                RootVec r = reflect(static_cast<int>(i), b);
                if (is_nonnegative(r) && !r.is_zero() && seen.insert(r).second) next.push_back(r);
            }
        }
        frontier = std::move(next);
    }
    std::vector<RootVec> roots(seen.begin(), seen.end());
    std::sort(roots.begin(), roots.end(), [](const RootVec& a, const RootVec& b) {
        if (ht(a) != ht(b)) return ht(a) < ht(b);
        return a < b;
    });
    return roots;
}

std::vector<int> CartanDatum::default_reduced_word() const {
    std::size_t ell = positive_roots().size();
    std::vector<int> word;
    auto apply_w = [&](RootVec b) {
        for (std::size_t k = word.size(); k-- > 0;) b = reflect(word[k], b);
        return b;
    };
    while (word.size() < ell) {
        bool extended = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_nonnegative(apply_w(simple(static_cast<int>(i))))) {
                word.push_back(static_cast<int>(i));
                extended = true;
                break;
            }
        }
        if (!extended) throw Error(ErrorCode::VerificationFailed, "reduced word search stalled");
    }
    return word;
}

}  // namespace bosonext
