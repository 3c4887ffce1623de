#include "grouplaw/groups.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace grouplaw {

FiniteGroup::Elt FiniteGroup::power(const Elt& a, std::int64_t k) const {
  Elt base = k < 0 ? inverse(a) : a;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Elt result = identity();
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    if (e >>= 1) base = multiply(base, base);
  }
  return result;
}

std::vector<FiniteGroup::Elt> FiniteGroup::elements(
    std::uint64_t budget) const {
  if (order() > budget) {
    throw BudgetError("group " + name() + " of order " + order().str() +
                      " exceeds enumeration budget " + std::to_string(budget));
  }
  std::vector<Elt> out;
  enumerate([&](const Elt& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Z_n, written multiplicatively; elements are residues.

class CyclicGroup final : public FiniteGroup {
public:
  explicit CyclicGroup(std::uint64_t n) : n_(n) {
    if (n == 0) throw DomainError("cyclic group needs n >= 1");
  }

  std::string name() const override { return "cyclic:" + std::to_string(n_); }
  BigInt order() const override { return BigInt(n_); }
  Elt identity() const override { return std::uint64_t{0}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    return (get(a) + get(b)) % n_;
  }

  Elt inverse(const Elt& a) const override {
    const std::uint64_t v = get(a);
    return v == 0 ? v : n_ - v;
  }

  std::string encode(const Elt& a) const override {
    return std::to_string(get(a));
  }

  Elt sample(Rng& rng) const override { return rng.below(n_); }

  std::vector<Elt> generators() const override {
    if (n_ == 1) return {};
    return {std::uint64_t{1}};
  }

  void enumerate(const std::function<bool(const Elt&)>& visit) const override {
    for (std::uint64_t v = 0; v < n_; ++v) {
      if (!visit(Elt(v))) return;
    }
  }

  std::uint64_t value(const Elt& a) const { return get(a); }

private:
  std::uint64_t n_;

  static std::uint64_t get(const Elt& a) {
    return std::any_cast<std::uint64_t>(a);
  }
};

// ---------------------------------------------------------------------------
// S_k on points 0..k-1; elements are image vectors, composition (ab)(x) =
// a(b(x)).

class SymmetricGroup final : public FiniteGroup {
public:
  explicit SymmetricGroup(std::uint32_t degree) : degree_(degree) {
    if (degree < 1 || degree > 5) {
      throw DomainError("symmetric groups are supported for degree 1..5");
    }
  }

  std::string name() const override {
    return "sym:" + std::to_string(degree_);
  }

  BigInt order() const override {
    std::uint64_t f = 1;
    for (std::uint32_t i = 2; i <= degree_; ++i) f *= i;
    return BigInt(f);
  }

  Elt identity() const override {
    std::vector<std::uint8_t> id(degree_);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }

  Elt multiply(const Elt& a, const Elt& b) const override {
    const auto& pa = get(a);
    const auto& pb = get(b);
    std::vector<std::uint8_t> c(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) c[i] = pa[pb[i]];
    return c;
  }

  Elt inverse(const Elt& a) const override {
    const auto& pa = get(a);
    std::vector<std::uint8_t> c(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) c[pa[i]] = static_cast<std::uint8_t>(i);
    return c;
  }

  std::string encode(const Elt& a) const override {
    const auto& pa = get(a);
    std::string s;
    for (std::uint8_t v : pa) s.push_back(static_cast<char>('0' + v));
    return s;
  }

  Elt sample(Rng& rng) const override {
    std::vector<std::uint8_t> p(degree_);
    std::iota(p.begin(), p.end(), 0);
    for (std::uint32_t i = degree_; i > 1; --i) {
      std::swap(p[i - 1], p[rng.below(i)]);
    }
    return p;
  }

  std::vector<Elt> generators() const override {
    if (degree_ < 2) return {};
    std::vector<std::uint8_t> transposition(degree_);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    if (degree_ == 2) return {Elt(transposition)};
    std::vector<std::uint8_t> cycle(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) {
      cycle[i] = static_cast<std::uint8_t>((i + 1) % degree_);
    }
    return {Elt(transposition), Elt(cycle)};
  }

  void enumerate(const std::function<bool(const Elt&)>& visit) const override {
    std::vector<std::uint8_t> p(degree_);
    std::iota(p.begin(), p.end(), 0);
    do {
      if (!visit(Elt(p))) return;
    } while (std::next_permutation(p.begin(), p.end()));
  }

private:
  std::uint32_t degree_;

  static const std::vector<std::uint8_t>& get(const Elt& a) {
    return *std::any_cast<std::vector<std::uint8_t>>(&a);
  }
};

// ---------------------------------------------------------------------------
// Q_8 = {1, -1, i, -i, j, -j, k, -k} with a fixed Cayley table.

class QuaternionGroup final : public FiniteGroup {
public:
  std::string name() const override { return "q8"; }
  BigInt order() const override { return BigInt(8); }
  Elt identity() const override { return std::uint64_t{0}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    return kTable[get(a)][get(b)];
  }

  Elt inverse(const Elt& a) const override {
    const std::uint64_t v = get(a);
    for (std::uint64_t w = 0; w < 8; ++w) {
      if (kTable[v][w] == 0) return w;
    }
    throw DomainError("corrupt quaternion table");
  }

  std::string encode(const Elt& a) const override { return kNames[get(a)]; }

  Elt sample(Rng& rng) const override { return rng.below(8); }

  std::vector<Elt> generators() const override {
    return {std::uint64_t{2}, std::uint64_t{4}};  // i and j
  }

  void enumerate(const std::function<bool(const Elt&)>& visit) const override {
    for (std::uint64_t v = 0; v < 8; ++v) {
      if (!visit(Elt(v))) return;
    }
  }

private:
  // Index: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k.
  static constexpr std::array<std::array<std::uint64_t, 8>, 8> kTable = {{
      {0, 1, 2, 3, 4, 5, 6, 7},  // 1
      {1, 0, 3, 2, 5, 4, 7, 6},  // -1
      {2, 3, 1, 0, 6, 7, 5, 4},  // i  (i*i=-1, i*j=k, i*k=-j)
      {3, 2, 0, 1, 7, 6, 4, 5},  // -i
      {4, 5, 7, 6, 1, 0, 2, 3},  // j  (j*i=-k, j*j=-1, j*k=i)
      {5, 4, 6, 7, 0, 1, 3, 2},  // -j
      {6, 7, 4, 5, 3, 2, 1, 0},  // k  (k*i=j, k*j=-i, k*k=-1)
      {7, 6, 5, 4, 2, 3, 0, 1},  // -k
  }};
  static constexpr std::array<const char*, 8> kNames = {
      "1", "-1", "i", "-i", "j", "-j", "k", "-k"};

  static std::uint64_t get(const Elt& a) {
    return std::any_cast<std::uint64_t>(a);
  }
};

// ---------------------------------------------------------------------------
// Direct product; elements are pairs stored as two-element vectors.

class ProductGroup final : public FiniteGroup {
public:
  ProductGroup(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw DomainError("product factors must be non-null");
  }

  std::string name() const override {
    return "product:" + a_->name() + "x" + b_->name();
  }

  BigInt order() const override { return a_->order() * b_->order(); }

  Elt identity() const override {
    return std::vector<Elt>{a_->identity(), b_->identity()};
  }

  Elt multiply(const Elt& x, const Elt& y) const override {
    const auto& px = get(x);
    const auto& py = get(y);
    return std::vector<Elt>{a_->multiply(px[0], py[0]),
                            b_->multiply(px[1], py[1])};
  }

  Elt inverse(const Elt& x) const override {
    const auto& px = get(x);
    return std::vector<Elt>{a_->inverse(px[0]), b_->inverse(px[1])};
  }

  std::string encode(const Elt& x) const override {
    const auto& px = get(x);
    return "(" + a_->encode(px[0]) + "," + b_->encode(px[1]) + ")";
  }

  Elt sample(Rng& rng) const override {
    return std::vector<Elt>{a_->sample(rng), b_->sample(rng)};
  }

  std::vector<Elt> generators() const override {
    std::vector<Elt> gens;
    for (const Elt& g : a_->generators()) {
      gens.push_back(std::vector<Elt>{g, b_->identity()});
    }
    for (const Elt& h : b_->generators()) {
      gens.push_back(std::vector<Elt>{a_->identity(), h});
    }
    return gens;
  }

  void enumerate(const std::function<bool(const Elt&)>& visit) const override {
    bool keep_going = true;
    a_->enumerate([&](const Elt& x) {
      b_->enumerate([&](const Elt& y) {
        keep_going = visit(std::vector<Elt>{x, y});
        return keep_going;
      });
      return keep_going;
    });
  }

private:
  GroupPtr a_;
  GroupPtr b_;

  static const std::vector<Elt>& get(const Elt& x) {
    return *std::any_cast<std::vector<Elt>>(&x);
  }
};

// ---------------------------------------------------------------------------
// UT(l, p, m) behind the uniform interface.

class UnitriGroup final : public FiniteGroup {
public:
  explicit UnitriGroup(const GroupParams& params) : params_(params) {
    params_.validate();
  }

  std::string name() const override {
    return "ut:" + std::to_string(params_.p) + ":" +
           std::to_string(params_.ell) + ":" + std::to_string(params_.m);
  }

  BigInt order() const override { return ut_group_order(params_); }

  Elt identity() const override { return UnitriMatrix::identity(params_); }

  Elt multiply(const Elt& a, const Elt& b) const override {
    return get(a) * get(b);
  }

  Elt inverse(const Elt& a) const override { return get(a).inverse(); }

  std::string encode(const Elt& a) const override { return get(a).key(); }

  Elt sample(Rng& rng) const override { return random_unitri(params_, rng); }

  std::vector<Elt> generators() const override {
    // Superdiagonal elementaries with basis-form entries; commutators build
    // the decomposables of the higher levels, whose sums fill each level.
    std::vector<Elt> gens;
    for (std::uint32_t i = 1; i < params_.ell; ++i) {
      for (std::uint32_t c = 0; c < params_.m; ++c) {
        UnitriMatrix e = UnitriMatrix::identity(params_);
        MultilinearForm f(params_.p, 1, params_.m);
        f.set_coeff_at(c, 1);
        e.set_entry(i, i + 1, std::move(f));
        gens.push_back(std::move(e));
      }
    }
    return gens;
  }

  void enumerate(const std::function<bool(const Elt&)>& visit) const override {
    ut_enumerate(params_, UINT64_MAX,
                 [&](const UnitriMatrix& a) { return visit(Elt(a)); });
  }

private:
  GroupParams params_;

  static const UnitriMatrix& get(const Elt& a) {
    return *std::any_cast<UnitriMatrix>(&a);
  }
};

}  // namespace

GroupPtr make_cyclic(std::uint64_t n) {
  return std::make_shared<CyclicGroup>(n);
}

GroupPtr make_symmetric(std::uint32_t degree) {
  return std::make_shared<SymmetricGroup>(degree);
}

GroupPtr make_quaternion() { return std::make_shared<QuaternionGroup>(); }

GroupPtr make_direct_product(GroupPtr a, GroupPtr b) {
  return std::make_shared<ProductGroup>(std::move(a), std::move(b));
}

GroupPtr make_unitri_group(const GroupParams& params) {
  return std::make_shared<UnitriGroup>(params);
}

}  // namespace grouplaw
