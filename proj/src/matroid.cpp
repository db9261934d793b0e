#include "tropbundle/matroid.hpp"

#include <algorithm>

#include "tropbundle/error.hpp"
#include "tropbundle/linalg.hpp"

namespace tb {

bool tuple_lex_less(Mask a, Mask b) {
  while (a && b) {
    int ea = __builtin_ctz(a), eb = __builtin_ctz(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

int Matroid::index_of(const std::string& label) const {
  for (int i = 0; i < m_; ++i)
    if (ground_[i] == label) return i;
  fail(Err::InvalidInput, "unknown ground label '" + label + "'");
}

std::vector<int> Matroid::elements_of(Mask s) const {
  std::vector<int> out;
  for (int e = 0; e < m_; ++e)
    if (s >> e & 1) out.push_back(e);
  return out;
}

std::vector<std::string> Matroid::labels_of(Mask s) const {
  std::vector<std::string> out;
  for (int e = 0; e < m_; ++e)
    if (s >> e & 1) out.push_back(ground_[e]);
  return out;
}

Mask Matroid::mask_of(const std::vector<std::string>& labels) const {
  Mask s = 0;
  for (const auto& l : labels) s |= Mask(1) << index_of(l);
  return s;
}

void Matroid::finish_construction() {
  m_ = static_cast<int>(ground_.size());
  if (m_ < 1 || m_ > kMaxGround) fail(Err::TooLarge, "ground set size must be in 1..16");
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : ground_)
      if (!seen.insert(l).second) fail(Err::InvalidInput, "duplicate ground label '" + l + "'");
  }
  if (bases_.empty()) fail(Err::EmptyBases);
  std::sort(bases_.begin(), bases_.end(), tuple_lex_less);
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  rank_ = popcount(bases_[0]);
  for (Mask b : bases_)
    if (popcount(b) != rank_) fail(Err::ExchangeAxiomViolation, "bases of unequal size");
  basis_set_.insert(bases_.begin(), bases_.end());

  // Exchange axiom: for B1, B2 and e in B1\B2 there is f in B2\B1 with
  // B1 - e + f a basis.
  for (Mask b1 : bases_) {
    for (Mask b2 : bases_) {
      Mask out = b1 & ~b2;
      while (out) {
        int e = __builtin_ctz(out);
        out &= out - 1;
        Mask cand = b2 & ~b1;
        bool found = false;
        while (cand) {
          int f = __builtin_ctz(cand);
          cand &= cand - 1;
          if (basis_set_.count((b1 & ~(Mask(1) << e)) | (Mask(1) << f))) {
            found = true;
            break;
          }
        }
        if (!found)
          fail(Err::ExchangeAxiomViolation,
               "no exchange for element '" + ground_[e] + "'");
      }
    }
  }

  Mask covered = 0;
  for (Mask b : bases_) covered |= b;
  if (covered != full_mask()) {
    int e = __builtin_ctz(~covered & full_mask());
    fail(Err::LoopDetected, "element '" + ground_[e] + "' lies in no basis");
  }

  const size_t n = size_t(1) << m_;
  independent_.assign(n, 0);
  for (Mask b : bases_) {
    // mark all subsets of b
    Mask sub = b;
    while (true) {
      independent_[sub] = 1;
      if (sub == 0) break;
      sub = (sub - 1) & b;
    }
  }
  rank_tab_.assign(n, 0);
  for (Mask s = 1; s < n; ++s) {
    if (independent_[s]) {
      rank_tab_[s] = static_cast<std::int8_t>(popcount(s));
    } else {
      int best = 0;
      Mask t = s;
      while (t) {
        int e = __builtin_ctz(t);
        t &= t - 1;
        best = std::max<int>(best, rank_tab_[s & ~(Mask(1) << e)]);
      }
      rank_tab_[s] = static_cast<std::int8_t>(best);
    }
  }

  // Circuits: dependent sets all of whose one-element deletions are independent.
  for (Mask s = 1; s < n; ++s) {
    if (independent_[s]) continue;
    bool minimal = true;
    Mask t = s;
    while (t && minimal) {
      int e = __builtin_ctz(t);
      t &= t - 1;
      if (!independent_[s & ~(Mask(1) << e)]) minimal = false;
    }
    if (minimal) circuits_.push_back(s);
  }
  std::sort(circuits_.begin(), circuits_.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return tuple_lex_less(a, b);
  });

  for (Mask s = 0; s < n; ++s)
    if (closure(s) == s) flats_.push_back(s);
  std::sort(flats_.begin(), flats_.end(), [this](Mask a, Mask b) {
    if (rank_tab_[a] != rank_tab_[b]) return rank_tab_[a] < rank_tab_[b];
    return tuple_lex_less(a, b);
  });

  for (Mask b : bases_) {
    std::vector<std::pair<int, Mask>> fc;
    for (int e = 0; e < m_; ++e) {
      if (b >> e & 1) continue;
      Mask c = Mask(1) << e;
      Mask t = b;
      while (t) {
        int x = __builtin_ctz(t);
        t &= t - 1;
        if (basis_set_.count((b & ~(Mask(1) << x)) | (Mask(1) << e))) c |= Mask(1) << x;
      }
      fc.emplace_back(e, c);
    }
    fund_circuits_.emplace(b, std::move(fc));
  }
}

Mask Matroid::closure(Mask s) const {
  int r = rank_tab_[s];
  Mask c = s;
  for (int e = 0; e < m_; ++e) {
    if (c >> e & 1) continue;
    if (rank_tab_[s | (Mask(1) << e)] == r) c |= Mask(1) << e;
  }
  return c;
}

bool Matroid::is_loop_free() const {
  Mask covered = 0;
  for (Mask b : bases_) covered |= b;
  return covered == full_mask();
}

std::vector<Mask> Matroid::flats_of_rank(int k) const {
  std::vector<Mask> out;
  for (Mask f : flats_)
    if (rank_tab_[f] == k) out.push_back(f);
  return out;
}

Mask Matroid::fundamental_circuit(int e, Mask basis) const {
  if (!is_basis(basis)) fail(Err::NotABasis);
  if (basis >> e & 1) fail(Err::ElementInBasis, "'" + ground_[e] + "' lies in the basis");
  for (const auto& [el, c] : fundamental_circuits(basis))
    if (el == e) return c;
  fail(Err::InvalidInput, "element index out of range");
}

const std::vector<std::pair<int, Mask>>& Matroid::fundamental_circuits(Mask basis) const {
  auto it = fund_circuits_.find(basis);
  if (it == fund_circuits_.end()) fail(Err::NotABasis);
  return it->second;
}

Matroid Matroid::from_basis_masks(std::vector<std::string> ground, std::vector<Mask> bases) {
  Matroid m;
  m.ground_ = std::move(ground);
  m.bases_ = std::move(bases);
  m.finish_construction();
  return m;
}

Matroid Matroid::from_bases(std::vector<std::string> ground,
                            const std::vector<std::vector<std::string>>& bases) {
  Matroid probe;
  probe.ground_ = ground;
  probe.m_ = static_cast<int>(ground.size());
  std::vector<Mask> masks;
  for (const auto& b : bases) masks.push_back(probe.mask_of(b));
  return from_basis_masks(std::move(ground), std::move(masks));
}

Matroid Matroid::from_circuits(std::vector<std::string> ground,
                               const std::vector<std::vector<std::string>>& circuits) {
  const int m = static_cast<int>(ground.size());
  if (m < 1 || m > kMaxGround) fail(Err::TooLarge, "ground set size must be in 1..16");
  Matroid probe;
  probe.ground_ = ground;
  probe.m_ = m;
  std::vector<Mask> circ;
  for (const auto& c : circuits) circ.push_back(probe.mask_of(c));
  for (size_t i = 0; i < circ.size(); ++i)
    for (size_t j = 0; j < circ.size(); ++j)
      if (i != j && (circ[i] & circ[j]) == circ[i])
        fail(Err::InvalidInput, "circuit family is not an antichain");
  // Independent sets avoid every circuit; bases are the maximal ones.
  const Mask full = (Mask(1) << m) - 1;
  std::vector<char> indep(size_t(1) << m, 1);
  for (Mask s = 0; s <= full; ++s)
    for (Mask c : circ)
      if ((s & c) == c) {
        indep[s] = 0;
        break;
      }
  int r = 0;
  for (Mask s = 0; s <= full; ++s)
    if (indep[s]) r = std::max(r, popcount(s));
  std::vector<Mask> bases;
  for (Mask s = 0; s <= full; ++s)
    if (indep[s] && popcount(s) == r) bases.push_back(s);
  Matroid out = from_basis_masks(std::move(ground), std::move(bases));
  if (out.circuits() != [&] {
        auto c = circ;
        std::sort(c.begin(), c.end(), [&](Mask a, Mask b) {
          if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
          return tuple_lex_less(a, b);
        });
        return c;
      }())
    fail(Err::InvalidInput, "circuit family violates the circuit axioms");
  return out;
}

Matroid Matroid::uniform(int r, int m) {
  if (m < 1 || m > kMaxGround) fail(Err::TooLarge, "ground set size must be in 1..16");
  if (r < 1 || r > m) fail(Err::InvalidInput, "uniform matroid needs 1 <= r <= m");
  std::vector<std::string> ground;
  for (int i = 1; i <= m; ++i) ground.push_back("e" + std::to_string(i));
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << m); ++s)
    if (popcount(s) == r) bases.push_back(s);
  return from_basis_masks(std::move(ground), std::move(bases));
}

Matroid Matroid::fano() {
  std::vector<std::string> ground = {"y1", "y2", "y3", "z1", "z2", "z3", "w"};
  const std::vector<std::vector<std::string>> lines = {
      {"y1", "w", "z1"}, {"y2", "w", "z2"}, {"y3", "w", "z3"}, {"y3", "y1", "z2"},
      {"y1", "y2", "z3"}, {"y2", "y3", "z1"}, {"z1", "z2", "z3"}};
  Matroid probe;
  probe.ground_ = ground;
  probe.m_ = 7;
  std::unordered_set<Mask> line_set;
  for (const auto& l : lines) line_set.insert(probe.mask_of(l));
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << 7); ++s)
    if (popcount(s) == 3 && !line_set.count(s)) bases.push_back(s);
  return from_basis_masks(std::move(ground), std::move(bases));
}

Matroid Matroid::vamos() {
  std::vector<std::string> ground = {"h1", "h2", "f1", "f2", "e", "p", "g", "q"};
  const std::vector<std::vector<std::string>> quads = {
      {"h1", "h2", "f1", "f2"},
      {"h1", "h2", "e", "p"},
      {"f1", "f2", "e", "p"},
      {"h1", "h2", "g", "q"},
      {"f1", "f2", "g", "q"}};
  Matroid probe;
  probe.ground_ = ground;
  probe.m_ = 8;
  std::unordered_set<Mask> dep;
  for (const auto& qd : quads) dep.insert(probe.mask_of(qd));
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << 8); ++s)
    if (popcount(s) == 4 && !dep.count(s)) bases.push_back(s);
  return from_basis_masks(std::move(ground), std::move(bases));
}

Matroid Matroid::linear(std::vector<std::string> ground, const MatI& matrix,
                        std::optional<long long> prime) {
  const int m = static_cast<int>(ground.size());
  if (m < 1 || m > kMaxGround) fail(Err::TooLarge, "ground set size must be in 1..16");
  if (matrix.empty()) fail(Err::InvalidInput, "empty matrix");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != m)
      fail(Err::DimensionMismatch, "matrix must have one column per ground element");
  auto rank_of_cols = [&](const std::vector<int>& cols) {
    MatI sub(matrix.size(), VecI(cols.size()));
    for (size_t i = 0; i < matrix.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) sub[i][j] = matrix[i][cols[j]];
    return prime ? rank_gfp(sub, *prime) : rank_q(sub);
  };
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  const int r = rank_of_cols(all);
  if (r == 0) fail(Err::LoopDetected, "zero matrix has no loop-free matroid");
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << m); ++s) {
    if (popcount(s) != r) continue;
    std::vector<int> cols;
    for (int e = 0; e < m; ++e)
      if (s >> e & 1) cols.push_back(e);
    if (rank_of_cols(cols) == r) bases.push_back(s);
  }
  return from_basis_masks(std::move(ground), std::move(bases));
}

Matroid Matroid::named(const std::string& name) {
  if (name == "fano") return fano();
  if (name == "vamos") return vamos();
  if (name.rfind("uniform:", 0) == 0) {
    auto body = name.substr(8);
    auto comma = body.find(',');
    if (comma == std::string::npos) fail(Err::Parse, "expected uniform:r,m");
    try {
      int r = std::stoi(body.substr(0, comma));
      int m = std::stoi(body.substr(comma + 1));
      return uniform(r, m);
    } catch (const std::logic_error&) {
      fail(Err::Parse, "expected uniform:r,m");
    }
  }
  fail(Err::Parse, "unknown matroid name '" + name + "'");
}

Matroid Matroid::dual() const {
  std::vector<Mask> bases;
  const Mask full = full_mask();
  for (Mask b : bases_) bases.push_back(full & ~b);
  return from_basis_masks(ground_, std::move(bases));
}

Matroid Matroid::quotient(Mask flat) const {
  if (!is_flat(flat)) fail(Err::NotAFlat);
  const Mask comp = full_mask() & ~flat;
  if (comp == 0) fail(Err::EmptyBases, "quotient by the full ground set");
  const int rf = rank_tab_[flat];
  std::vector<std::string> ground = labels_of(comp);
  const auto elems = elements_of(comp);
  std::vector<Mask> bases;
  // Bases of M/F: independent-over-F subsets of the complement of full rank.
  for (Mask s = 0; s < (Mask(1) << elems.size()); ++s) {
    if (popcount(s) != rank_ - rf) continue;
    Mask lifted = 0;
    for (size_t i = 0; i < elems.size(); ++i)
      if (s >> i & 1) lifted |= Mask(1) << elems[i];
    if (rank_tab_[lifted | flat] == rank_) bases.push_back(s);
  }
  return from_basis_masks(std::move(ground), std::move(bases));
}

Matroid Matroid::restriction(Mask subset) const {
  if (subset == 0) fail(Err::EmptyBases, "restriction to the empty set");
  const int rs = rank_tab_[subset];
  std::vector<std::string> ground = labels_of(subset);
  const auto elems = elements_of(subset);
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << elems.size()); ++s) {
    if (popcount(s) != rs) continue;
    Mask lifted = 0;
    for (size_t i = 0; i < elems.size(); ++i)
      if (s >> i & 1) lifted |= Mask(1) << elems[i];
    if (independent_[lifted]) bases.push_back(s);
  }
  return from_basis_masks(std::move(ground), std::move(bases));
}

int Matroid::submodular_defect(Mask f1, Mask f2) const {
  if (!is_flat(f1) || !is_flat(f2)) fail(Err::NotAFlat);
  return rank_tab_[f1] + rank_tab_[f2] - rank_tab_[f1 | f2] - rank_tab_[f1 & f2];
}

bool Matroid::is_modular() const {
  for (Mask f1 : flats_)
    for (Mask f2 : flats_)
      if (submodular_defect(f1, f2) != 0) return false;
  return true;
}

Mask Matroid::greedy_basis(const VecQ& w, const std::vector<int>* tie_order) const {
  if (static_cast<int>(w.size()) != m_) fail(Err::DimensionMismatch);
  std::vector<int> pos(m_);
  for (int i = 0; i < m_; ++i) pos[i] = i;
  if (tie_order) {
    if (static_cast<int>(tie_order->size()) != m_) fail(Err::DimensionMismatch);
    for (int i = 0; i < m_; ++i) pos[(*tie_order)[i]] = i;
  }
  std::vector<int> order(m_);
  for (int i = 0; i < m_; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return pos[a] < pos[b];
  });
  Mask b = 0;
  for (int e : order) {
    Mask cand = b | (Mask(1) << e);
    if (rank_tab_[cand] > rank_tab_[b]) b = cand;
    if (popcount(b) == rank_) break;
  }
  return b;
}

Mask Matroid::max_weight_basis_bruteforce(const VecQ& w) const {
  if (static_cast<int>(w.size()) != m_) fail(Err::DimensionMismatch);
  Mask best = 0;
  Rat best_w = 0;
  bool first = true;
  for (Mask b : bases_) {
    Rat total = 0;
    for (int e = 0; e < m_; ++e)
      if (b >> e & 1) total += w[e];
    if (first || total > best_w || (total == best_w && tuple_lex_less(b, best))) {
      best = b;
      best_w = total;
      first = false;
    }
  }
  return best;
}

}  // namespace tb
