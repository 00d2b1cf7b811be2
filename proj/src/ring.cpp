#include "torvan/ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace torvan {

Monomial::Monomial(std::vector<std::uint16_t> exps, const std::vector<int>& weights)
    : exps_(std::move(exps)) {
  degree_ = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    degree_ += static_cast<long long>(exps_[i]) * weights[i];
}

Monomial Monomial::one(int nvars, const std::vector<int>& weights) {
  return Monomial(std::vector<std::uint16_t>(nvars, 0), weights);
}

Monomial Monomial::variable(int i, int nvars, const std::vector<int>& weights) {
  std::vector<std::uint16_t> e(nvars, 0);
  e[i] = 1;
  return Monomial(std::move(e), weights);
}

bool Monomial::has_positive() const {
  for (auto e : exps_)
    if (e) return true;
  return false;
}

Monomial Monomial::times(const Monomial& other, const std::vector<int>& weights) const {
  std::vector<std::uint16_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    unsigned s = unsigned(exps_[i]) + unsigned(other.exps_[i]);
    if (s > 0xFFFF) throw Error("monomial exponent overflow");
    e[i] = static_cast<std::uint16_t>(s);
  }
  return Monomial(std::move(e), weights);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& other, const std::vector<int>& weights) const {
  std::vector<std::uint16_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (other.exps_[i] > exps_[i]) throw Error("monomial quotient is not a monomial");
    e[i] = static_cast<std::uint16_t>(exps_[i] - other.exps_[i]);
  }
  return Monomial(std::move(e), weights);
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b, const std::vector<int>& weights) {
  std::vector<std::uint16_t> e(a.exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.exps_[i], b.exps_[i]);
  return Monomial(std::move(e), weights);
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    if (a.exps_[i] && b.exps_[i]) return false;
  return true;
}

namespace {

long long block_degree(const Monomial& m, const std::vector<int>& weights, int lo, int hi) {
  long long d = 0;
  for (int i = lo; i < hi; ++i) d += static_cast<long long>(m.exp(i)) * weights[i];
  return d;
}

// Grevlex on the variable range [lo, hi): weighted degree first, then the
// last nonzero entry of a-b, negative meaning a greater.
int cmp_grevlex_range(const Monomial& a, const Monomial& b, const std::vector<int>& weights,
                      int lo, int hi) {
  long long da = block_degree(a, weights, lo, hi);
  long long db = block_degree(b, weights, lo, hi);
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    int d = int(a.exp(i)) - int(b.exp(i));
    if (d != 0) return d < 0 ? 1 : -1;
  }
  return 0;
}

}  // namespace

int cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order,
                  const std::vector<int>& weights) {
  if (a.nvars() != b.nvars()) throw Error("monomial length mismatch");
  int n = a.nvars();
  switch (order.kind) {
    case OrderKind::Grevlex:
      return cmp_grevlex_range(a, b, weights, 0, n);
    case OrderKind::Lex:
      for (int i = 0; i < n; ++i) {
        int d = int(a.exp(i)) - int(b.exp(i));
        if (d != 0) return d > 0 ? 1 : -1;
      }
      return 0;
    case OrderKind::Block: {
      int k = order.block;
      if (k < 1 || k >= n) throw Error("block order size out of range");
      int c = cmp_grevlex_range(a, b, weights, 0, k);
      if (c != 0) return c;
      return cmp_grevlex_range(a, b, weights, k, n);
    }
  }
  throw Error("unreachable monomial order kind");
}

RingPtr Ring::make(std::vector<std::string> vars, Field field, std::vector<int> weights,
                   MonomialOrder order) {
  if (weights.empty()) weights.assign(vars.size(), 1);
  if (weights.size() != vars.size()) throw ValidationError("weight count != variable count");
  for (int w : weights)
    if (w < 1) throw ValidationError("grading weights must be >= 1");
  std::set<std::string> seen(vars.begin(), vars.end());
  if (seen.size() != vars.size()) throw ValidationError("duplicate variable names");
  if (order.kind == OrderKind::Block &&
      (order.block < 1 || order.block >= static_cast<int>(vars.size())))
    throw ValidationError("block-elimination size must satisfy 1 <= k < nvars");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->vars_ = std::move(vars);
  r->field_ = field;
  r->weights_ = std::move(weights);
  r->order_ = order;
  return r;
}

bool Ring::standard_graded() const {
  for (int w : weights_)
    if (w != 1) return false;
  return true;
}

std::optional<int> Ring::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

RingPtr Ring::with_order(MonomialOrder order) const {
  return make(vars_, field_, weights_, order);
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a.get() != b.get()) throw Error("ring mismatch");
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  // Sort descending, combine equal monomials, drop zeros.
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
    return ring_->cmp(x.mono, y.mono) > 0;
  });
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = terms_.back().coeff + t.coeff;
      if (terms_.back().coeff.is_zero()) terms_.pop_back();
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(const RingPtr& ring, const FieldElem& c) {
  if (c.is_zero()) return zero(ring);
  return Polynomial(ring, {Term{Monomial::one(ring->nvars(), ring->weights()), c}});
}

Polynomial Polynomial::from_int(const RingPtr& ring, long long n) {
  return constant(ring, FieldElem::from_int(ring->field(), n));
}

Polynomial Polynomial::variable(const RingPtr& ring, int i) {
  return Polynomial(ring, {Term{Monomial::variable(i, ring->nvars(), ring->weights()),
                                FieldElem::one(ring->field())}});
}

Polynomial Polynomial::term(const RingPtr& ring, const Monomial& m, const FieldElem& c) {
  if (c.is_zero()) return zero(ring);
  return Polynomial(ring, {Term{m, c}});
}

const Term& Polynomial::lead() const {
  if (terms_.empty()) throw Error("lead term of zero polynomial");
  return terms_[0];
}

long long Polynomial::degree() const {
  long long d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::homogeneous() const { return homogeneous_degree().has_value() || is_zero(); }

std::optional<long long> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  long long d = terms_[0].mono.degree();
  for (const auto& t : terms_)
    if (t.mono.degree() != d) return std::nullopt;
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono, -t.coeff});
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial r(a.ring_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = a.ring_->cmp(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      FieldElem s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!s.is_zero()) r.terms_.push_back(Term{a.terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial Polynomial::times_term(const Monomial& m, const FieldElem& c) const {
  if (c.is_zero()) return zero(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    r.terms_.push_back(Term{t.mono.times(m, ring_->weights()), t.coeff * c});
  return r;  // multiplication by a term preserves the order
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ring_);
  std::vector<Term> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      acc.push_back(Term{ta.mono.times(tb.mono, a.ring_->weights()), ta.coeff * tb.coeff});
  return Polynomial(a.ring_, std::move(acc));
}

Polynomial Polynomial::scaled(const FieldElem& c) const {
  if (c.is_zero()) return zero(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("negative polynomial power");
  Polynomial acc = from_int(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.ring_.get() != b.ring_.get()) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

FieldElem Polynomial::eval(const std::vector<FieldElem>& point) const {
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw Error("evaluation point has wrong length");
  FieldElem acc = FieldElem::zero(ring_->field());
  for (const auto& t : terms_) {
    FieldElem v = t.coeff;
    for (int i = 0; i < ring_->nvars(); ++i)
      if (t.mono.exp(i)) v = v * point[i].pow(t.mono.exp(i));
    acc = acc + v;
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.str();
    bool neg = !c.empty() && c[0] == '-';
    std::string abs = neg ? c.substr(1) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool printed_coeff = false;
    if (t.mono.is_one() || abs != "1") {
      os << abs;
      printed_coeff = true;
    }
    bool first_var = true;
    for (int i = 0; i < ring_->nvars(); ++i) {
      if (!t.mono.exp(i)) continue;
      if (printed_coeff || !first_var) os << "*";
      os << ring_->vars()[i];
      if (t.mono.exp(i) > 1) os << "^" << t.mono.exp(i);
      first_var = false;
    }
  }
  return os.str();
}

namespace {

// Recursive-descent parser for the printer's grammar.
class PolyParser {
public:
  PolyParser(const RingPtr& ring, const std::string& text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    Polynomial r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

private:
  Polynomial expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (get() == '-');
    Polynomial acc = product();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '+' || c == '-') {
        get();
        Polynomial t = product();
        acc = (c == '+') ? acc + t : acc - t;
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        get();
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = atom();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      std::string num = read_digits();
      if (num.empty()) fail("expected exponent");
      base = base.pow(std::stoi(num));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      Polynomial inner = expr();
      skip_ws();
      if (get() != ')') fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      skip_ws();
      if (peek() == '/') {
        // Rational coefficient literal a/b (must not be followed by a letter).
        std::size_t save = pos_;
        get();
        skip_ws();
        std::string den = read_digits();
        if (den.empty()) {
          pos_ = save;
        } else {
          return Polynomial::constant(ring_, FieldElem::parse(ring_->field(), num + "/" + den));
        }
      }
      return Polynomial::constant(ring_, FieldElem::parse(ring_->field(), num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = read_ident();
      auto idx = ring_->var_index(name);
      if (!idx) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected character");
    return Polynomial::zero(ring_);  // unreachable
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      out.push_back(s_[pos_++]);
    return out;
  }

  std::string read_ident() {
    std::string out;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      out.push_back(s_[pos_++]);
    return out;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& why) {
    throw ValidationError("polynomial parse error at offset " + std::to_string(pos_) + ": " +
                          why + " in '" + s_ + "'");
  }

  const RingPtr& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
  return PolyParser(ring, text).parse();
}

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_->nvars())
    throw Error("ring map needs one image per source variable");
  for (const auto& f : images_) require_same_ring(f.ring(), target_);
}

RingMap RingMap::identity(const RingPtr& ring) {
  std::vector<Polynomial> images;
  for (int i = 0; i < ring->nvars(); ++i) images.push_back(Polynomial::variable(ring, i));
  return RingMap(ring, ring, std::move(images));
}

Polynomial RingMap::apply(const Polynomial& f) const {
  require_same_ring(f.ring(), source_);
  // Cache image powers per variable up to the needed exponent.
  std::vector<std::vector<Polynomial>> powers(source_->nvars());
  auto power = [&](int var, int e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::from_int(target_, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images_[var]);
    return cache[e];
  };
  Polynomial acc = Polynomial::zero(target_);
  for (const auto& t : f.terms()) {
    Polynomial m = Polynomial::constant(target_, t.coeff);
    for (int i = 0; i < source_->nvars(); ++i)
      if (t.mono.exp(i)) m = m * power(i, t.mono.exp(i));
    acc = acc + m;
  }
  return acc;
}

RingMap RingMap::then(const RingMap& next) const {
  require_same_ring(target_, next.source());
  std::vector<Polynomial> images;
  images.reserve(images_.size());
  for (const auto& f : images_) images.push_back(next.apply(f));
  return RingMap(source_, next.target(), std::move(images));
}

CoordPtr free_coords(const RingPtr& ring) {
  auto c = std::make_shared<CoordRing>();
  c->ring = ring;
  return c;
}

}  // namespace torvan
