#include "adlv/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

namespace adlv {

namespace {

constexpr std::size_t kMaxTotalRank = 16;
constexpr std::size_t kMaxWeylOrder = 2'000'000;

}  // namespace

FiniteWeylElt FiniteWeylElt::identity(std::size_t rank) {
  FiniteWeylElt w;
  w.r_ = rank;
  w.m_.assign(rank * rank, 0);
  for (std::size_t i = 0; i < rank; ++i) w.m_[i * rank + i] = 1;
  return w;
}

bool FiniteWeylElt::is_identity() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      if (m_[i * r_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

FiniteWeylElt FiniteWeylElt::operator*(const FiniteWeylElt& o) const {
  if (r_ != o.r_) throw ArgumentError("Weyl product: rank mismatch");
  FiniteWeylElt p;
  p.r_ = r_;
  p.m_.assign(r_ * r_, 0);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < r_; ++k) {
      const std::int64_t a = m_[i * r_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < r_; ++j) p.m_[i * r_ + j] += a * o.m_[k * r_ + j];
    }
  return p;
}

std::size_t FiniteWeylElt::hash() const noexcept {
  return boost::hash_range(m_.begin(), m_.end());
}

namespace {

struct Edge {
  int i, j;
  int aij, aji;  // A(i,j), A(j,i)
};

std::vector<Edge> dynkin_edges(char letter, int n) {
  std::vector<Edge> e;
  auto simple = [&](int i, int j) { e.push_back({i, j, -1, -1}); };
  switch (letter) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) simple(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
      e.push_back({n - 2, n - 1, -1, -2});
      break;
    case 'C':
      for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
      e.push_back({n - 2, n - 1, -2, -1});
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
      simple(n - 3, n - 1);
      break;
    case 'E':
      simple(0, 2);
      simple(2, 3);
      simple(1, 3);
      for (int i = 3; i + 1 < n; ++i) simple(i, i + 1);
      break;
    case 'F':
      simple(0, 1);
      e.push_back({1, 2, -1, -2});
      simple(2, 3);
      break;
    case 'G':
      e.push_back({0, 1, -3, -1});
      break;
    default:
      break;
  }
  return e;
}

bool valid_component(char letter, int n) {
  switch (letter) {
    case 'A': return n >= 1 && n <= 8;
    case 'B': return n >= 2 && n <= 8;
    case 'C': return n >= 2 && n <= 8;
    case 'D': return n >= 4 && n <= 8;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

std::vector<std::pair<char, int>> parse_label(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (s.empty()) throw ConfigError("empty type label");
  std::vector<std::pair<char, int>> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char letter = s[pos++];
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || pos - start > 2) throw ConfigError("malformed type label: " + raw);
    const int n = std::stoi(s.substr(start, pos - start));
    if (!valid_component(letter, n)) throw ConfigError("unsupported type: " + raw);
    out.emplace_back(letter, n);
    if (pos < s.size()) {
      if (s[pos] != 'X') throw ConfigError("malformed type label: " + raw);
      ++pos;
      if (pos == s.size()) throw ConfigError("malformed type label: " + raw);
    }
  }
  return out;
}

std::uint64_t weyl_order(char letter, int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  switch (letter) {
    case 'A': return f * static_cast<std::uint64_t>(n + 1);
    case 'B':
    case 'C': return f << n;
    case 'D': return f << (n - 1);
    case 'E': return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

}  // namespace

RootDatumPtr build_root_datum(const std::string& label) {
  const auto parts = parse_label(label);
  std::shared_ptr<RootDatum> rd(new RootDatum());
  std::size_t r = 0;
  for (const auto& [letter, n] : parts) r += static_cast<std::size_t>(n);
  if (r > kMaxTotalRank) throw ConfigError("total rank too large: " + label);
  rd->rank_ = r;
  rd->cartan_ = IntMatrix(r, r);
  rd->comp_of_.assign(r, 0);
  std::string norm;
  int off = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto [letter, n] = parts[c];
    if (!norm.empty()) norm += "x";
    norm += letter + std::to_string(n);
    rd->components_.push_back({letter, n, off});
    for (int i = 0; i < n; ++i) {
      rd->cartan_(off + i, off + i) = 2;
      rd->comp_of_[off + i] = c;
    }
    for (const Edge& e : dynkin_edges(letter, n)) {
      rd->cartan_(off + e.i, off + e.j) = e.aij;
      rd->cartan_(off + e.j, off + e.i) = e.aji;
    }
    off += n;
  }
  rd->label_ = norm;
  const IntMatrix& A = rd->cartan_;

  // symmetrizer: A(i,j) d_i = A(j,i) d_j
  {
    std::vector<Rational> d(r, Rational(0));
    for (const TypeComponent& tc : rd->components_) {
      d[tc.offset] = 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (int i = tc.offset; i < tc.offset + tc.rank; ++i)
          for (int j = tc.offset; j < tc.offset + tc.rank; ++j)
            if (i != j && A(i, j) != 0 && d[i].numerator() != 0 && d[j].numerator() == 0) {
              d[j] = d[i] * Rational(A(i, j), A(j, i));
              changed = true;
            }
      }
    }
    std::int64_t lcm = 1;
    for (const Rational& q : d) lcm = std::lcm(lcm, q.denominator());
    rd->symmetrizer_.resize(r);
    for (std::size_t i = 0; i < r; ++i)
      rd->symmetrizer_[i] = (d[i] * lcm).numerator();
  }

  // positive roots by root strings, height by height
  {
    std::set<Root> all;
    std::vector<Root> layer;
    for (std::size_t i = 0; i < r; ++i) {
      Root a(r, 0);
      a[i] = 1;
      layer.push_back(a);
      all.insert(a);
    }
    std::vector<Root> ordered;
    while (!layer.empty()) {
      std::sort(layer.begin(), layer.end(), std::greater<>());
      ordered.insert(ordered.end(), layer.begin(), layer.end());
      std::set<Root> next;
      for (const Root& b : layer) {
        for (std::size_t i = 0; i < r; ++i) {
          std::int64_t pairing = 0;  // <alpha_i^vee, b>
          for (std::size_t j = 0; j < r; ++j) pairing += b[j] * A(i, j);
          std::int64_t p = 0;
          Root down = b;
          for (;;) {
            if (down[i] == 0) break;
            --down[i];
            if (!all.count(down)) break;
            ++p;
          }
          if (p - pairing > 0) {
            Root up = b;
            ++up[i];
            if (!all.count(up)) next.insert(up);
          }
        }
      }
      layer.assign(next.begin(), next.end());
      for (const Root& b : layer) all.insert(b);
    }
    rd->pos_roots_ = std::move(ordered);
  }

  // coroots: <beta^vee, alpha_k> = 2 B_k / sum_j c_j B_j with B_k = sum_i c_i A(i,k) d_i
  for (const Root& c : rd->pos_roots_) {
    std::vector<std::int64_t> B(r, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < r; ++i) B[k] += c[i] * A(i, k) * rd->symmetrizer_[i];
    std::int64_t norm2 = 0;
    for (std::size_t k = 0; k < r; ++k) norm2 += c[k] * B[k];
    Coweight cv(r);
    for (std::size_t k = 0; k < r; ++k) {
      if ((2 * B[k]) % norm2 != 0) throw IntegrityError("non-integral coroot");
      cv[k] = 2 * B[k] / norm2;
    }
    rd->coroots_.push_back(std::move(cv));
  }

  rd->rho2_.assign(r, 0);
  for (const Root& a : rd->pos_roots_)
    for (std::size_t i = 0; i < r; ++i) rd->rho2_[i] += a[i];

  rd->highest_.assign(rd->components_.size(), 0);
  {
    std::vector<std::int64_t> best_h(rd->components_.size(), -1);
    for (std::size_t k = 0; k < rd->pos_roots_.size(); ++k) {
      const Root& a = rd->pos_roots_[k];
      std::size_t first = 0;
      while (a[first] == 0) ++first;
      const std::size_t c = rd->comp_of_[first];
      std::int64_t h = 0;
      for (std::int64_t x : a) h += x;
      if (h > best_h[c]) {
        best_h[c] = h;
        rd->highest_[c] = k;
      }
    }
  }

  for (std::size_t i = 0; i < r; ++i) {
    FiniteWeylElt s = FiniteWeylElt::identity(r);
    // s_i(v)_k = v_k - v_i A(i,k)
    for (std::size_t k = 0; k < r; ++k) s.at(k, i) -= A(i, k);
    rd->simple_.push_back(std::move(s));
  }

  rd->pq_ = LatticeQuotient(A.transposed());
  return rd;
}

Coweight RootDatum::simple_coroot(std::size_t j) const {
  Coweight v(rank_);
  for (std::size_t k = 0; k < rank_; ++k) v[k] = cartan_(j, k);
  return v;
}

Coweight RootDatum::fundamental_coweight(std::size_t j) const {
  Coweight v(rank_, 0);
  v[j] = 1;
  return v;
}

FiniteWeylElt RootDatum::reflection(const Root& beta) const {
  auto it = std::find(pos_roots_.begin(), pos_roots_.end(), beta);
  if (it == pos_roots_.end()) throw ArgumentError("reflection: not a positive root");
  const Coweight& cv = coroots_[static_cast<std::size_t>(it - pos_roots_.begin())];
  FiniteWeylElt s = identity();
  for (std::size_t k = 0; k < rank_; ++k)
    for (std::size_t j = 0; j < rank_; ++j) s.at(k, j) -= cv[k] * beta[j];
  return s;
}

Coweight RootDatum::rho_image(const FiniteWeylElt& w) const {
  Coweight v(rank_, 0);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) v[i] += w.at(i, j);
  return v;
}

bool RootDatum::inverse_maps_positive(const FiniteWeylElt& w, const Root& a) const {
  return pair(rho_image(w), a) > 0;
}

std::size_t RootDatum::length(const FiniteWeylElt& w) const {
  const Coweight rv = rho_image(w);
  std::size_t n = 0;
  for (const Root& a : pos_roots_)
    if (pair(rv, a) < 0) ++n;
  return n;
}

bool RootDatum::is_left_descent(const FiniteWeylElt& w, std::size_t i) const {
  // s_i w < w iff w^{-1} alpha_i < 0 iff <w rho^vee, alpha_i> < 0
  std::int64_t s = 0;
  for (std::size_t j = 0; j < rank_; ++j) s += w.at(i, j);
  return s < 0;
}

bool RootDatum::is_right_descent(const FiniteWeylElt& w, std::size_t i) const {
  return is_left_descent(inverse(w), i);
}

std::vector<std::size_t> RootDatum::reduced_word(const FiniteWeylElt& w) const {
  std::vector<std::size_t> word;
  FiniteWeylElt x = w;
  for (;;) {
    std::size_t i = 0;
    while (i < rank_ && !is_left_descent(x, i)) ++i;
    if (i == rank_) break;
    word.push_back(i);
    x = simple_[i] * x;
  }
  return word;
}

FiniteWeylElt RootDatum::from_word(const std::vector<std::size_t>& word) const {
  FiniteWeylElt x = identity();
  for (std::size_t i : word) {
    if (i >= rank_) throw ArgumentError("from_word: index out of range");
    x = x * simple_[i];
  }
  return x;
}

FiniteWeylElt RootDatum::inverse(const FiniteWeylElt& w) const {
  std::vector<std::size_t> word = reduced_word(w);
  std::reverse(word.begin(), word.end());
  return from_word(word);
}

FiniteWeylElt RootDatum::longest_element() const {
  std::vector<std::size_t> all(rank_);
  for (std::size_t i = 0; i < rank_; ++i) all[i] = i;
  return longest_element(all);
}

FiniteWeylElt RootDatum::longest_element(const std::vector<std::size_t>& J) const {
  FiniteWeylElt x = identity();
  for (;;) {
    bool grew = false;
    for (std::size_t j : J)
      if (!is_left_descent(x, j)) {
        x = simple_[j] * x;
        grew = true;
        break;
      }
    if (!grew) return x;
  }
}

Root RootDatum::act_on_root(const FiniteWeylElt& w, const Root& a) const {
  // (w a)(v) = a(w^{-1} v)
  const FiniteWeylElt wi = inverse(w);
  Root out(rank_, 0);
  for (std::size_t j = 0; j < rank_; ++j)
    for (std::size_t i = 0; i < rank_; ++i) out[j] += a[i] * wi.at(i, j);
  return out;
}

bool RootDatum::is_positive_root(const Root& a) const {
  for (std::int64_t c : a)
    if (c != 0) return c > 0;
  return false;
}

std::vector<std::size_t> RootDatum::zero_pairing_set(const Coweight& mu) const {
  if (mu.size() != rank_) throw ArgumentError("zero_pairing_set: dimension mismatch");
  if (!is_dominant(mu)) throw ArgumentError("zero_pairing_set: coweight is not dominant");
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < rank_; ++i)
    if (mu[i] == 0) J.push_back(i);
  return J;
}

std::size_t RootDatum::order_of_weyl_group() const {
  std::uint64_t n = 1;
  for (const TypeComponent& tc : components_) n *= weyl_order(tc.letter, tc.rank);
  return static_cast<std::size_t>(n);
}

const std::vector<FiniteWeylElt>& RootDatum::elements() const {
  if (order_of_weyl_group() > kMaxWeylOrder)
    throw ResourceError("finite Weyl group of " + label_ + " is too large to enumerate");
  std::call_once(elements_once_, [this] {
    std::vector<FiniteWeylElt> out{identity()};
    std::unordered_set<FiniteWeylElt> seen{identity()};
    std::size_t begin = 0;
    while (begin < out.size()) {
      const std::size_t end = out.size();
      std::vector<FiniteWeylElt> layer;
      for (std::size_t k = begin; k < end; ++k)
        for (std::size_t i = 0; i < rank_; ++i) {
          if (is_left_descent(out[k], i)) continue;
          FiniteWeylElt y = simple_[i] * out[k];
          if (seen.insert(y).second) layer.push_back(std::move(y));
        }
      std::sort(layer.begin(), layer.end(), [this](const FiniteWeylElt& a, const FiniteWeylElt& b) {
        return reduced_word(a) < reduced_word(b);
      });
      out.insert(out.end(), layer.begin(), layer.end());
      begin = end;
    }
    elements_ = std::move(out);
  });
  return elements_;
}

bool RootDatum::in_parabolic(const FiniteWeylElt& w, const std::vector<std::size_t>& J) const {
  // W_J is the stabilizer of sum_{i not in J} omega_i^vee
  Coweight v(rank_, 1);
  for (std::size_t j : J) v[j] = 0;
  return w.apply(v) == v;
}

bool RootDatum::is_min_coset_rep(const FiniteWeylElt& w, const std::vector<std::size_t>& J,
                                 CosetSide side) const {
  const FiniteWeylElt x = side == CosetSide::kLeft ? w : inverse(w);
  for (std::size_t j : J)
    if (is_left_descent(x, j)) return false;
  return true;
}

void RootDatum::min_coset_reps(const std::vector<std::size_t>& J, CosetSide side,
                               const std::function<void(const FiniteWeylElt&)>& emit) const {
  for (std::size_t j : J)
    if (j >= rank_) throw ArgumentError("min_coset_reps: index out of range");
  for (const FiniteWeylElt& w : elements())
    if (is_min_coset_rep(w, J, side)) emit(w);
}

std::vector<FiniteWeylElt> RootDatum::min_coset_reps(const std::vector<std::size_t>& J,
                                                     CosetSide side) const {
  std::vector<FiniteWeylElt> out;
  min_coset_reps(J, side, [&](const FiniteWeylElt& w) { out.push_back(w); });
  return out;
}

std::pair<FiniteWeylElt, FiniteWeylElt> RootDatum::left_parabolic_split(
    const FiniteWeylElt& v, const std::vector<std::size_t>& J) const {
  FiniteWeylElt z = identity();
  FiniteWeylElt y = v;
  for (;;) {
    bool moved = false;
    for (std::size_t j : J)
      if (is_left_descent(y, j)) {
        y = simple_[j] * y;
        z = z * simple_[j];
        moved = true;
        break;
      }
    if (!moved) return {z, y};
  }
}

std::string format_coweight(const Coweight& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string format_qcoweight(const QCoweight& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + "]";
}

QCoweight to_rational(const Coweight& v) {
  QCoweight q;
  q.reserve(v.size());
  for (std::int64_t c : v) q.emplace_back(c);
  return q;
}

}  // namespace adlv
