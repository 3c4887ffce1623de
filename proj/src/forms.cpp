#include "grouplaw/forms.hpp"

#include <algorithm>

#include "grouplaw/rng.hpp"

namespace grouplaw {

namespace {

constexpr std::size_t kDenseSizeCap = std::size_t{1} << 24;

void check_same_shape(const MultilinearForm& f, const MultilinearForm& g) {
  if (f.modulus() != g.modulus()) {
    throw ShapeError("form modulus mismatch: " + std::to_string(f.modulus()) +
                     " vs " + std::to_string(g.modulus()));
  }
  if (f.arity() != g.arity() || f.dim() != g.dim()) {
    throw ShapeError("form shape mismatch: arity " +
                     std::to_string(f.arity()) + " dim " +
                     std::to_string(f.dim()) + " vs arity " +
                     std::to_string(g.arity()) + " dim " +
                     std::to_string(g.dim()));
  }
}

}  // namespace

std::size_t dense_size(std::uint32_t dim, std::uint32_t arity) {
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (n > kDenseSizeCap / dim) {
      throw ShapeError("dense coefficient array d^t exceeds size cap (d=" +
                       std::to_string(dim) + ", t=" + std::to_string(arity) +
                       ")");
    }
    n *= dim;
  }
  return n;
}

Vec::Vec(std::uint32_t p, std::vector<std::uint32_t> entries)
    : p_(p), entries_(std::move(entries)) {
  gf::require_prime(p);
  if (entries_.empty()) throw ShapeError("vector must have dimension >= 1");
  for (auto& e : entries_) e %= p_;
}

Vec Vec::zero(std::uint32_t p, std::uint32_t dim) {
  return Vec(p, std::vector<std::uint32_t>(dim, 0));
}

Vec Vec::basis(std::uint32_t p, std::uint32_t dim, std::uint32_t i) {
  std::vector<std::uint32_t> e(dim, 0);
  e.at(i) = 1;
  return Vec(p, std::move(e));
}

MultilinearForm::MultilinearForm(std::uint32_t p, std::uint32_t arity,
                                 std::uint32_t dim)
    : p_(p), arity_(arity), dim_(dim) {
  gf::require_prime(p);
  if (arity < 1) throw ShapeError("form arity must be >= 1");
  if (dim < 1) throw ShapeError("form dimension must be >= 1");
  coeffs_.assign(dense_size(dim, arity), 0);
}

MultilinearForm::MultilinearForm(std::uint32_t p, std::uint32_t arity,
                                 std::uint32_t dim,
                                 std::vector<std::uint32_t> coeffs)
    : MultilinearForm(p, arity, dim) {
  if (coeffs.size() != coeffs_.size()) {
    throw ShapeError("coefficient array has length " +
                     std::to_string(coeffs.size()) + ", expected d^t = " +
                     std::to_string(coeffs_.size()));
  }
  coeffs_ = std::move(coeffs);
  for (auto& c : coeffs_) c %= p_;
}

void MultilinearForm::set_coeff_at(std::size_t flat, std::uint32_t v) {
  coeffs_.at(flat) = v % p_;
}

std::uint32_t MultilinearForm::coeff(std::span<const std::uint32_t> index) const {
  if (index.size() != arity_) throw ShapeError("index tuple length != arity");
  std::size_t flat = 0;
  for (std::uint32_t i : index) {
    if (i >= dim_) throw ShapeError("index out of range");
    flat = flat * dim_ + i;
  }
  return coeffs_[flat];
}

void MultilinearForm::set_coeff(std::span<const std::uint32_t> index,
                                std::uint32_t v) {
  if (index.size() != arity_) throw ShapeError("index tuple length != arity");
  std::size_t flat = 0;
  for (std::uint32_t i : index) {
    if (i >= dim_) throw ShapeError("index out of range");
    flat = flat * dim_ + i;
  }
  coeffs_[flat] = v % p_;
}

gf::Fp MultilinearForm::evaluate(std::span<const Vec> args) const {
  if (args.size() != arity_) {
    throw ShapeError("form of arity " + std::to_string(arity_) + " applied to " +
                     std::to_string(args.size()) + " arguments");
  }
  for (const Vec& a : args) {
    if (a.modulus() != p_ || a.dim() != dim_) {
      throw ShapeError("argument vector shape does not match form");
    }
  }
  std::uint32_t acc = 0;
  const std::size_t n = coeffs_.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::uint32_t c = coeffs_[flat];
    if (c == 0) continue;
    std::size_t rest = flat;
    // Decode row-major digits from the least significant (last slot) up.
    std::uint32_t prod = c;
    for (std::uint32_t slot = arity_; slot-- > 0;) {
      prod = gf::mul(prod, args[slot][rest % dim_], p_);
      rest /= dim_;
      if (prod == 0) break;
    }
    acc = gf::add(acc, prod, p_);
  }
  return gf::Fp(acc, p_);
}

MultilinearForm MultilinearForm::operator+(const MultilinearForm& o) const {
  check_same_shape(*this, o);
  MultilinearForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    r.coeffs_[i] = gf::add(coeffs_[i], o.coeffs_[i], p_);
  }
  return r;
}

MultilinearForm MultilinearForm::operator-(const MultilinearForm& o) const {
  check_same_shape(*this, o);
  MultilinearForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    r.coeffs_[i] = gf::sub(coeffs_[i], o.coeffs_[i], p_);
  }
  return r;
}

MultilinearForm MultilinearForm::operator-() const {
  MultilinearForm r = *this;
  for (auto& c : r.coeffs_) c = gf::neg(c, p_);
  return r;
}

MultilinearForm MultilinearForm::scale(std::uint32_t c) const {
  MultilinearForm r = *this;
  c %= p_;
  for (auto& x : r.coeffs_) x = gf::mul(x, c, p_);
  return r;
}

bool MultilinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](std::uint32_t c) { return c == 0; });
}

bool MultilinearForm::operator<(const MultilinearForm& o) const {
  if (p_ != o.p_) return p_ < o.p_;
  if (arity_ != o.arity_) return arity_ < o.arity_;
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return coeffs_ < o.coeffs_;
}

nlohmann::json MultilinearForm::to_json() const {
  return nlohmann::json{{"version", 1},
                        {"p", p_},
                        {"arity", arity_},
                        {"dim", dim_},
                        {"coeffs", coeffs_}};
}

MultilinearForm MultilinearForm::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != 1) {
    throw ShapeError("unsupported form JSON version");
  }
  return MultilinearForm(j.at("p").get<std::uint32_t>(),
                         j.at("arity").get<std::uint32_t>(),
                         j.at("dim").get<std::uint32_t>(),
                         j.at("coeffs").get<std::vector<std::uint32_t>>());
}

std::string MultilinearForm::key() const {
  std::string s = std::to_string(p_) + ":" + std::to_string(arity_) + ":" +
                  std::to_string(dim_) + ":";
  s.reserve(s.size() + coeffs_.size());
  for (std::uint32_t c : coeffs_) {
    if (p_ <= 10) {
      s.push_back(static_cast<char>('0' + c));
    } else {
      s += std::to_string(c);
      s.push_back(',');
    }
  }
  return s;
}

MultilinearForm tensor_concat(const MultilinearForm& f,
                              const MultilinearForm& g) {
  if (f.modulus() != g.modulus() || f.dim() != g.dim()) {
    throw ShapeError("tensor_concat requires matching modulus and dimension");
  }
  dense_size(f.dim(), f.arity() + g.arity());
  const auto& fc = f.coeffs();
  const auto& gc = g.coeffs();
  const std::uint32_t p = f.modulus();
  std::size_t out = 0;
  std::vector<std::uint32_t> buf(fc.size() * gc.size());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i] == 0) {
      out += gc.size();
      continue;
    }
    for (std::size_t j = 0; j < gc.size(); ++j) {
      buf[out++] = gf::mul(fc[i], gc[j], p);
    }
  }
  return MultilinearForm(f.modulus(), f.arity() + g.arity(), f.dim(),
                         std::move(buf));
}

MultilinearForm random_form(std::uint32_t p, std::uint32_t arity,
                            std::uint32_t dim, Rng& rng) {
  MultilinearForm f(p, arity, dim);
  for (std::size_t i = 0; i < f.coeff_count(); ++i) {
    f.set_coeff_at(i, static_cast<std::uint32_t>(rng.below(p)));
  }
  return f;
}

Vec random_vec(std::uint32_t p, std::uint32_t dim, Rng& rng) {
  std::vector<std::uint32_t> e(dim);
  for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(p));
  return Vec(p, std::move(e));
}

}  // namespace grouplaw
