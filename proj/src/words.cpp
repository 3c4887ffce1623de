#include "grouplaw/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "grouplaw/rng.hpp"

namespace grouplaw::words {

namespace {

constexpr std::uint64_t kMaxLetters = 1 << 20;

void normalize_into(std::vector<Syllable>& out, const Syllable& s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().var == s.var) {
    out.back().exp += s.exp;
    if (out.back().exp == 0) out.pop_back();
  } else {
    out.push_back(s);
  }
}

}  // namespace

GroupWord GroupWord::generator(std::uint32_t var, std::int64_t exp) {
  if (var == 0) throw DomainError("variable indices are 1-based");
  GroupWord w;
  if (exp != 0) w.syllables_.push_back({var, exp});
  return w;
}

GroupWord GroupWord::from_syllables(std::vector<Syllable> syllables) {
  GroupWord w;
  for (const Syllable& s : syllables) {
    if (s.var == 0) throw DomainError("variable indices are 1-based");
    normalize_into(w.syllables_, s);
  }
  return w;
}

std::uint64_t GroupWord::length() const {
  std::uint64_t n = 0;
  for (const Syllable& s : syllables_) {
    n += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
  }
  return n;
}

std::uint32_t GroupWord::max_var() const {
  std::uint32_t m = 0;
  for (const Syllable& s : syllables_) m = std::max(m, s.var);
  return m;
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
  GroupWord w = *this;
  for (const Syllable& s : o.syllables_) normalize_into(w.syllables_, s);
  return w;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    w.syllables_.push_back({it->var, -it->exp});
  }
  return w;
}

GroupWord GroupWord::pow(std::int64_t k) const {
  if (k == 0) return GroupWord();
  const GroupWord base = k < 0 ? inverse() : *this;
  const std::uint64_t n = static_cast<std::uint64_t>(k < 0 ? -k : k);
  if (length() > 0 && n > kMaxLetters / length()) {
    throw Error("word power exceeds the letter cap");
  }
  GroupWord acc;
  for (std::uint64_t i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

std::vector<std::int32_t> GroupWord::letters() const {
  if (length() > kMaxLetters) throw Error("word exceeds the letter cap");
  std::vector<std::int32_t> out;
  out.reserve(length());
  for (const Syllable& s : syllables_) {
    const std::int32_t letter =
        s.exp > 0 ? static_cast<std::int32_t>(s.var)
                  : -static_cast<std::int32_t>(s.var);
    const std::uint64_t reps =
        static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
    for (std::uint64_t i = 0; i < reps; ++i) out.push_back(letter);
  }
  return out;
}

GroupWord GroupWord::from_letters(const std::vector<std::int32_t>& letters) {
  GroupWord w;
  for (std::int32_t l : letters) {
    if (l == 0) throw DomainError("letter 0 is not a generator");
    normalize_into(w.syllables_,
                   {static_cast<std::uint32_t>(l < 0 ? -l : l),
                    l < 0 ? std::int64_t{-1} : std::int64_t{1}});
  }
  return w;
}

GroupWord GroupWord::cyclic_reduce() const {
  std::vector<std::int32_t> ls = letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  return from_letters(std::vector<std::int32_t>(ls.begin() + lo,
                                                ls.begin() + hi));
}

std::string GroupWord::str() const {
  if (syllables_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i > 0) s += " ";
    s += "x" + std::to_string(syllables_[i].var);
    if (syllables_[i].exp != 1) s += "^" + std::to_string(syllables_[i].exp);
  }
  return s;
}

bool GroupWord::operator<(const GroupWord& o) const {
  if (length() != o.length()) return length() < o.length();
  // Lexicographic on syllables with positive exponents preferred, so the
  // canonical orientation of a single generator is x_k rather than x_k^-1.
  const std::size_t n = std::min(syllables_.size(), o.syllables_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Syllable& a = syllables_[i];
    const Syllable& b = o.syllables_[i];
    if (a.var != b.var) return a.var < b.var;
    const std::uint64_t ae = static_cast<std::uint64_t>(a.exp < 0 ? -a.exp : a.exp);
    const std::uint64_t be = static_cast<std::uint64_t>(b.exp < 0 ? -b.exp : b.exp);
    if (ae != be) return ae < be;
    if ((a.exp < 0) != (b.exp < 0)) return b.exp < 0;
  }
  return syllables_.size() < o.syllables_.size();
}

bool conjugate_test(const GroupWord& w1, const GroupWord& w2) {
  std::vector<std::int32_t> a = w1.cyclic_reduce().letters();
  std::vector<std::int32_t> b = w2.cyclic_reduce().letters();
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[(i + shift) % a.size()] != b[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
  Parser(std::string_view text, const std::map<std::string, std::int64_t>& params)
      : text_(text), params_(params) {}

  GroupWord run() {
    GroupWord w = parse_seq();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected character '" + std::string(1, text_[pos_]) +
                           "'",
                       pos_);
    }
    return w;
  }

private:
  std::string_view text_;
  const std::map<std::string, std::int64_t>& params_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end_or(const char* stops) {
    skip_ws();
    if (pos_ >= text_.size()) return true;
    for (const char* s = stops; *s; ++s) {
      if (text_[pos_] == *s) return true;
    }
    return false;
  }

  GroupWord parse_seq(const char* stops = "") {
    GroupWord acc;
    while (!at_end_or(stops)) acc = acc * parse_factor();
    return acc;
  }

  GroupWord parse_factor() {
    GroupWord primary = parse_primary();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      const std::size_t exp_pos = pos_;
      const std::int64_t e = parse_exponent();
      if (e == 0) throw ParseError("zero exponent is not allowed", exp_pos);
      return primary.pow(e);
    }
    return primary;
  }

  GroupWord parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of word", pos_);
    const char c = text_[pos_];
    if (c == 'x') {
      const std::size_t var_pos = pos_++;
      std::uint64_t idx = 0;
      bool any = false;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        idx = idx * 10 + (text_[pos_] - '0');
        if (idx > 1000000) throw ParseError("variable index too large", var_pos);
        ++pos_;
        any = true;
      }
      if (!any) throw ParseError("expected digits after 'x'", var_pos);
      if (idx == 0) throw ParseError("variable indices start at x1", var_pos);
      return GroupWord::generator(static_cast<std::uint32_t>(idx));
    }
    if (c == '(') {
      ++pos_;
      GroupWord w = parse_seq(")");
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      GroupWord a = parse_seq(",");
      expect(',');
      GroupWord b = parse_seq("]");
      expect(']');
      // Commutator convention [a,b] = a^-1 b^-1 a b.
      return a.inverse() * b.inverse() * a * b;
    }
    throw ParseError("expected 'x<k>', '(' or '['", pos_);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError("expected '" + std::string(1, c) + "'", pos_);
    }
    ++pos_;
  }

  std::int64_t parse_exponent() {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected exponent", pos_);
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > (std::int64_t{1} << 40)) {
          throw ParseError("exponent too large", pos_);
        }
        ++pos_;
      }
      return negative ? -v : v;
    }
    if (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
        text_[pos_] == '_') {
      const std::size_t name_pos = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        name.push_back(text_[pos_++]);
      }
      auto it = params_.find(name);
      if (it == params_.end()) {
        throw ParseError("unbound parameter '" + name + "'", name_pos);
      }
      return negative ? -it->second : it->second;
    }
    throw ParseError("expected integer or parameter name", pos_);
  }
};

}  // namespace

GroupWord GroupWord::parse(std::string_view text,
                           const std::map<std::string, std::int64_t>& params) {
  return Parser(text, params).run();
}

// ---------------------------------------------------------------------------
// Nielsen reduction

namespace {

using Letters = std::vector<std::int32_t>;

Letters invert_letters(const Letters& ls) {
  Letters out;
  out.reserve(ls.size());
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(-*it);
  return out;
}

// Fixed letter order: x1 < x1^-1 < x2 < x2^-1 < ...
bool letter_less(std::int32_t a, std::int32_t b) {
  const std::int32_t va = a < 0 ? -a : a;
  const std::int32_t vb = b < 0 ? -b : b;
  if (va != vb) return va < vb;
  return a > 0 && b < 0;
}

bool letters_lex_less(const Letters& a, const Letters& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      letter_less);
}

bool has_suffix(const Letters& word, const Letters& suffix) {
  if (word.size() < suffix.size()) return false;
  return std::equal(suffix.begin(), suffix.end(),
                    word.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

bool has_prefix(const Letters& word, const Letters& prefix) {
  if (word.size() < prefix.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), word.begin());
}

}  // namespace

std::string NielsenMove::str() const {
  switch (kind) {
    case Kind::Invert:
      return "w" + std::to_string(i + 1) + " <- w" + std::to_string(i + 1) +
             "^-1";
    case Kind::MulRight:
      return "w" + std::to_string(i + 1) + " <- w" + std::to_string(i + 1) +
             " * w" + std::to_string(j + 1) + "^" + std::to_string(sign);
    case Kind::MulLeft:
      return "w" + std::to_string(i + 1) + " <- w" + std::to_string(j + 1) +
             "^" + std::to_string(sign) + " * w" + std::to_string(i + 1);
    case Kind::Swap:
      return "swap w" + std::to_string(i + 1) + ", w" + std::to_string(j + 1);
  }
  return "";
}

std::vector<GroupWord> apply_moves(std::vector<GroupWord> tuple,
                                   const std::vector<NielsenMove>& log) {
  for (const NielsenMove& mv : log) {
    switch (mv.kind) {
      case NielsenMove::Kind::Invert:
        tuple.at(mv.i) = tuple.at(mv.i).inverse();
        break;
      case NielsenMove::Kind::MulRight:
        tuple.at(mv.i) =
            tuple.at(mv.i) * (mv.sign < 0 ? tuple.at(mv.j).inverse()
                                          : tuple.at(mv.j));
        break;
      case NielsenMove::Kind::MulLeft:
        tuple.at(mv.i) = (mv.sign < 0 ? tuple.at(mv.j).inverse()
                                      : tuple.at(mv.j)) *
                         tuple.at(mv.i);
        break;
      case NielsenMove::Kind::Swap:
        std::swap(tuple.at(mv.i), tuple.at(mv.j));
        break;
    }
  }
  return tuple;
}

namespace {

// One pass of strict length reduction: replaces some w_i by a strictly
// shorter w_i w_j^s or w_j^s w_i if possible.
bool shorten_once(std::vector<GroupWord>& tuple,
                  std::vector<NielsenMove>& log) {
  const std::size_t n = tuple.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (tuple[i].is_trivial()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || tuple[j].is_trivial()) continue;
      for (int sign : {1, -1}) {
        const GroupWord factor =
            sign < 0 ? tuple[j].inverse() : tuple[j];
        GroupWord right = tuple[i] * factor;
        if (right.length() < tuple[i].length()) {
          tuple[i] = std::move(right);
          log.push_back({NielsenMove::Kind::MulRight, i, j, sign});
          return true;
        }
        GroupWord left = factor * tuple[i];
        if (left.length() < tuple[i].length()) {
          tuple[i] = std::move(left);
          log.push_back({NielsenMove::Kind::MulLeft, i, j, sign});
          return true;
        }
      }
    }
  }
  return false;
}

// Repairs one violation of the triple condition: an even-length v = a b
// (halves a, b) such that some u ends with a^-1 while some w begins with
// b^-1, so the middle of v would vanish in u v w. Exactly one of the
// length-preserving moves u -> u v, w -> v w rewrites its half toward the
// lexicographically smaller word; applying it strictly shrinks the
// half-pair potential, so these repairs terminate. Only runs when no strict
// shortening exists (cancellations are then at most half of each factor).
bool repair_half_overlap_once(std::vector<GroupWord>& tuple,
                              std::vector<NielsenMove>& log) {
  const std::size_t n = tuple.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (tuple[j].is_trivial()) continue;
    for (int dsign : {1, -1}) {
      const GroupWord v = dsign < 0 ? tuple[j].inverse() : tuple[j];
      const Letters vl = v.letters();
      if (vl.size() % 2 != 0) continue;
      const std::size_t k = vl.size() / 2;
      const Letters a(vl.begin(), vl.begin() + static_cast<std::ptrdiff_t>(k));
      const Letters b(vl.begin() + static_cast<std::ptrdiff_t>(k), vl.end());
      const Letters a_inv = invert_letters(a);
      const Letters b_inv = invert_letters(b);

      // u = tuple[i]^eps with suffix a^-1 and |u| >= 2k
      std::size_t u_slot = SIZE_MAX;
      int u_eps = 1;
      for (std::size_t i = 0; i < n && u_slot == SIZE_MAX; ++i) {
        if (i == j || tuple[i].is_trivial()) continue;
        if (tuple[i].length() < 2 * k) continue;
        const Letters wi = tuple[i].letters();
        if (has_suffix(wi, a_inv)) {
          u_slot = i;
          u_eps = 1;
        } else if (has_prefix(wi, a)) {  // tuple[i]^-1 ends with a^-1
          u_slot = i;
          u_eps = -1;
        }
      }
      if (u_slot == SIZE_MAX) continue;

      // w = tuple[l]^gam with prefix b^-1 and |w| >= 2k
      std::size_t w_slot = SIZE_MAX;
      int w_gam = 1;
      for (std::size_t l = 0; l < n && w_slot == SIZE_MAX; ++l) {
        if (l == j || tuple[l].is_trivial()) continue;
        if (tuple[l].length() < 2 * k) continue;
        const Letters wl = tuple[l].letters();
        if (has_prefix(wl, b_inv)) {
          w_slot = l;
          w_gam = 1;
        } else if (has_suffix(wl, b)) {  // tuple[l]^-1 begins with b^-1
          w_slot = l;
          w_gam = -1;
        }
      }
      if (w_slot == SIZE_MAX) continue;

      if (letters_lex_less(b_inv, a)) {
        // u -> u v improves u's trailing half.
        if (u_eps > 0) {
          tuple[u_slot] = tuple[u_slot] * v;
          log.push_back({NielsenMove::Kind::MulRight, u_slot, j, dsign});
        } else {
          tuple[u_slot] = v.inverse() * tuple[u_slot];
          log.push_back({NielsenMove::Kind::MulLeft, u_slot, j, -dsign});
        }
      } else {
        // a != b^-1 because v is freely reduced; w -> v w improves w.
        if (w_gam > 0) {
          tuple[w_slot] = v * tuple[w_slot];
          log.push_back({NielsenMove::Kind::MulLeft, w_slot, j, dsign});
        } else {
          tuple[w_slot] = tuple[w_slot] * v.inverse();
          log.push_back({NielsenMove::Kind::MulRight, w_slot, j, -dsign});
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace

NielsenResult nielsen_reduce(std::vector<GroupWord> tuple) {
  if (tuple.empty()) throw DomainError("nielsen_reduce needs a nonempty tuple");
  NielsenResult result;
  const std::size_t n = tuple.size();

  while (true) {
    if (shorten_once(tuple, result.log)) continue;
    if (repair_half_overlap_once(tuple, result.log)) continue;
    break;
  }

  // Canonical orientation, then selection sort: nontrivial ascending,
  // trivial slots at the end.
  for (std::size_t i = 0; i < n; ++i) {
    if (tuple[i].is_trivial()) continue;
    GroupWord inv = tuple[i].inverse();
    if (inv < tuple[i]) {
      tuple[i] = std::move(inv);
      result.log.push_back({NielsenMove::Kind::Invert, i, 0, 1});
    }
  }
  auto sort_key_less = [](const GroupWord& a, const GroupWord& b) {
    if (a.is_trivial() != b.is_trivial()) return !a.is_trivial();
    return a < b;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sort_key_less(tuple[j], tuple[best])) best = j;
    }
    if (best != i) {
      std::swap(tuple[i], tuple[best]);
      result.log.push_back({NielsenMove::Kind::Swap, i, best, 1});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (tuple[i].is_trivial()) result.trivial.push_back(i);
  }
  result.tuple = std::move(tuple);
  return result;
}

bool member_of_reduced(const GroupWord& w,
                       const std::vector<GroupWord>& tuple) {
  if (w.is_trivial()) return true;
  std::vector<GroupWord> gens;
  for (const GroupWord& g : tuple) {
    if (g.is_trivial()) continue;
    gens.push_back(g);
    gens.push_back(g.inverse());
  }
  if (gens.empty()) return false;

  constexpr std::size_t kVisitCap = 500000;
  std::set<std::vector<Syllable>> visited;
  std::vector<GroupWord> stack{w};
  visited.insert(w.syllables());
  while (!stack.empty()) {
    GroupWord u = std::move(stack.back());
    stack.pop_back();
    if (u.is_trivial()) return true;
    for (const GroupWord& g : gens) {
      for (bool left : {true, false}) {
        GroupWord v = left ? g * u : u * g;
        if (v.length() > u.length()) continue;
        if (visited.size() >= kVisitCap) {
          throw BudgetError("membership search exceeded its budget");
        }
        if (visited.insert(v.syllables()).second) {
          if (v.is_trivial()) return true;
          stack.push_back(std::move(v));
        }
      }
    }
  }
  return false;
}

bool is_basis(const std::vector<GroupWord>& tuple, std::uint32_t rank) {
  if (rank == 0) throw DomainError("ambient rank must be >= 1");
  for (const GroupWord& w : tuple) {
    if (w.max_var() > rank) {
      throw DomainError("word uses x" + std::to_string(w.max_var()) +
                        " beyond ambient rank " + std::to_string(rank));
    }
  }
  if (tuple.size() != rank) return false;
  NielsenResult reduced = nielsen_reduce(tuple);
  std::set<std::uint32_t> seen;
  for (const GroupWord& w : reduced.tuple) {
    const auto& syl = w.syllables();
    if (syl.size() != 1) return false;
    if (syl[0].exp != 1 && syl[0].exp != -1) return false;
    if (!seen.insert(syl[0].var).second) return false;
  }
  return seen.size() == rank;
}

std::vector<GroupWord> random_nielsen_moves(std::vector<GroupWord> tuple,
                                            std::size_t count,
                                            grouplaw::Rng& rng) {
  const std::size_t n = tuple.size();
  std::size_t applied = 0;
  while (applied < count) {
    const std::size_t i = rng.below(n);
    const std::uint64_t kind = rng.below(n >= 2 ? 3 : 1);
    if (kind == 0) {
      tuple[i] = tuple[i].inverse();
      ++applied;
      continue;
    }
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    const GroupWord factor = rng.below(2) ? tuple[j] : tuple[j].inverse();
    GroupWord cand = kind == 1 ? tuple[i] * factor : factor * tuple[i];
    // Keep the suite desk-sized; skipping a growth step is still a valid
    // random walk over elementary moves.
    if (cand.length() > 4096) continue;
    tuple[i] = std::move(cand);
    ++applied;
  }
  return tuple;
}

}  // namespace grouplaw::words
