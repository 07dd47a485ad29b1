#include "bsll/pcgroup.hpp"

#include <algorithm>
#include <sstream>

namespace bsll {

MatrixA::MatrixA(int p, int k, std::vector<std::vector<int>> rows)
    : p_(p), k_(k), rows_(std::move(rows)) {
  if (p_ < 2) throw std::invalid_argument("p must be at least 2");
  if (k_ < 1) throw std::invalid_argument("k must be at least 1");
  if (rows_.size() != static_cast<size_t>(k_ - 1))
    throw std::invalid_argument("matrix needs k-1 rows");
  for (int s = 1; s <= k_ - 1; ++s) {
    if (rows_[s - 1].size() != static_cast<size_t>(s))
      throw std::invalid_argument("row " + std::to_string(s) + " needs " +
                                  std::to_string(s) + " entries");
    for (int v : rows_[s - 1])
      if (v < 0 || v >= p_)
        throw std::invalid_argument("matrix entry out of range 0..p-1");
  }
}

int MatrixA::entry(int s, int t) const {
  if (s < 1 || s > k_ - 1 || t < 1 || t > s)
    throw std::invalid_argument("matrix index out of range");
  return rows_[s - 1][t - 1];
}

bool MatrixA::last_row_zero() const {
  if (k_ < 2) return true;
  for (int v : rows_.back())
    if (v != 0) return false;
  return true;
}

bool MatrixA::operator==(const MatrixA& o) const {
  return p_ == o.p_ && k_ == o.k_ && rows_ == o.rows_;
}

std::string MatrixA::to_string() const {
  std::ostringstream os;
  os << "p=" << p_ << " k=" << k_ << " [";
  for (size_t s = 0; s < rows_.size(); ++s) {
    if (s) os << " | ";
    for (size_t t = 0; t < rows_[s].size(); ++t) {
      if (t) os << ' ';
      os << rows_[s][t];
    }
  }
  os << ']';
  return os.str();
}

int NormalWord::rank(int p) const {
  int id = 0;
  for (int e : exps) id = id * p + e;
  return id;
}

NormalWord NormalWord::unrank(int id, int p, int k) {
  NormalWord w;
  w.exps.assign(k + 1, 0);
  for (int j = k; j >= 0; --j) {
    w.exps[j] = id % p;
    id /= p;
  }
  return w;
}

std::vector<std::pair<int, int>> NormalWord::letters() const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < exps.size(); ++i)
    if (exps[i]) out.emplace_back(static_cast<int>(i), exps[i]);
  return out;
}

namespace {

// Reduce exponents mod p, drop zero runs, merge adjacent equal indices
// (cascading through runs killed by the reduction).
void normalize_runs(std::vector<Letter>& w, int p) {
  std::vector<Letter> out;
  for (auto [i, e] : w) {
    e %= p;
    if (e < 0) e += p;
    while (true) {
      if (e == 0) break;
      if (!out.empty() && out.back().first == i) {
        e = (out.back().second + e) % p;
        out.pop_back();
        continue;
      }
      out.emplace_back(i, e);
      break;
    }
  }
  w = std::move(out);
}

} // namespace

NormalWord collect(const std::vector<Letter>& word, const MatrixA& a,
                   const CollectOptions& opts) {
  const int p = a.p();
  const int k = a.k();
  for (auto [i, e] : word) {
    (void)e;
    if (i < 0 || i > k) throw std::invalid_argument("generator index out of range");
  }
  std::vector<Letter> w(word.begin(), word.end());
  normalize_runs(w, p);

  long long steps = 0;
  for (;;) {
    size_t pos = w.size();
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].first > w[i + 1].first) { pos = i; break; }
    if (pos == w.size()) break;
    if (++steps > opts.max_rewrites)
      throw NonTermination("collection exceeded " + std::to_string(opts.max_rewrites) +
                           " rewrites for " + a.to_string());

    const auto [b, eb] = w[pos];
    const auto [aa, ea] = w[pos + 1];
    const int d = b - aa;
    std::vector<Letter> repl;
    if (eb > 1) repl.emplace_back(b, eb - 1);
    if (d >= 2) {
      // g_b g_a = w^{-1} g_a g_b with w = prod_t g_{a+t}^{A[d-1][t]};
      // the inverse word runs t = d-1 .. 1 with negated exponents.
      for (int t = d - 1; t >= 1; --t) {
        const int c = a.entry(d - 1, t);
        if (c) repl.emplace_back(aa + t, p - c);
      }
    }
    repl.emplace_back(aa, 1);
    repl.emplace_back(b, 1);
    if (ea > 1) repl.emplace_back(aa, ea - 1);

    std::vector<Letter> next;
    next.reserve(w.size() + repl.size());
    next.insert(next.end(), w.begin(), w.begin() + pos);
    next.insert(next.end(), repl.begin(), repl.end());
    next.insert(next.end(), w.begin() + pos + 2, w.end());
    normalize_runs(next, p);
    w = std::move(next);
  }

  NormalWord nw;
  nw.exps.assign(k + 1, 0);
  for (auto [i, e] : w) nw.exps[i] = e;
  return nw;
}

std::vector<std::vector<Letter>> relator_words(const MatrixA& a) {
  const int p = a.p();
  const int k = a.k();
  std::vector<std::vector<Letter>> out;
  for (int i = 0; i <= k; ++i) out.push_back({{i, p}});
  for (int d = 1; d <= k; ++d)
    for (int i = 0; i + d <= k; ++i) {
      std::vector<Letter> r{{i, 1}, {i + d, 1}, {i, -1}, {i + d, -1}};
      if (d >= 2)
        for (int t = d - 1; t >= 1; --t) {
          const int c = a.entry(d - 1, t);
          if (c) r.emplace_back(i + t, -c);
        }
      out.push_back(std::move(r));
    }
  return out;
}

namespace {

std::string word_label(const NormalWord& w) {
  std::string s;
  for (size_t i = 0; i < w.exps.size(); ++i) {
    if (!w.exps[i]) continue;
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(i);
    if (w.exps[i] > 1) s += "^" + std::to_string(w.exps[i]);
  }
  return s.empty() ? "1" : s;
}

int eval_word(const GroupTable& t, const std::vector<int>& gen_ids,
              const std::vector<Letter>& word) {
  int acc = GroupTable::identity;
  for (auto [i, e] : word) acc = t.mul(acc, t.pow(gen_ids[i], e));
  return acc;
}

} // namespace

GAGroup build_group(const MatrixA& a, const BuildOptions& opts) {
  const int p = a.p();
  const int k = a.k();
  long long order = 1;
  for (int i = 0; i <= k; ++i) {
    order *= p;
    if (order > opts.max_order)
      throw CapExceeded("group order p^(k+1) exceeds cap " +
                        std::to_string(opts.max_order));
  }
  const int n = static_cast<int>(order);

  GAGroup out{a, nullptr, {}, false, {}};

  std::vector<std::vector<Letter>> words(n);
  std::vector<std::string> labels(n);
  for (int id = 0; id < n; ++id) {
    const NormalWord w = NormalWord::unrank(id, p, k);
    words[id] = w.letters();
    labels[id] = word_label(w);
  }

  std::vector<int> mul(static_cast<size_t>(n) * n);
  try {
    std::vector<char> seen(n);
    for (int u = 0; u < n; ++u) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int v = 0; v < n; ++v) {
        std::vector<Letter> concat = words[u];
        concat.insert(concat.end(), words[v].begin(), words[v].end());
        const int prod = collect(concat, a, opts.collect).rank(p);
        mul[static_cast<size_t>(u) * n + v] = prod;
        // A repeat inside a row means two normal forms collide; the table
        // cannot be a group, so stop multiplying out.
        if (seen[prod]) {
          out.failure = "normal forms collide in the row of element " + std::to_string(u);
          return out;
        }
        seen[prod] = 1;
      }
    }
  } catch (const NonTermination& e) {
    out.failure = e.what();
    return out;
  }

  if (auto bad = GroupTable::verify(n, mul)) {
    out.failure = *bad;
    return out;
  }
  out.table = std::make_shared<GroupTable>(n, std::move(mul), std::move(labels));

  out.gens.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    NormalWord w;
    w.exps.assign(k + 1, 0);
    w.exps[i] = 1;
    out.gens[i] = w.rank(p);
  }

  for (const auto& r : relator_words(a))
    if (eval_word(*out.table, out.gens, r) != GroupTable::identity) {
      out.failure = "relator fails to evaluate to the identity";
      out.table = nullptr;
      out.gens.clear();
      return out;
    }

  // Generation sanity: the g_i must span the table.
  if (closure(out.table, out.gens).order() != n) {
    out.failure = "generators do not span the table";
    out.table = nullptr;
    out.gens.clear();
    return out;
  }

  out.consistent = true;
  return out;
}

ShiftData shift_data(const GAGroup& g) {
  if (!g.consistent)
    throw std::invalid_argument("shift_data requires a consistent build");
  const int p = g.matrix.p();
  const int k = g.matrix.k();
  const GroupPtr& t = g.table;
  const int n = t->order();

  std::vector<int> e1, e2;
  for (int id = 0; id < n; ++id) {
    const NormalWord w = NormalWord::unrank(id, p, k);
    if (w.exps[k] == 0) e1.push_back(id);
    if (w.exps[0] == 0) e2.push_back(id);
  }
  std::vector<int> gens1(g.gens.begin(), g.gens.end() - 1);
  std::vector<int> gens2(g.gens.begin() + 1, g.gens.end());

  // Subgroup construction already verifies closure and spanning; re-check
  // the index-p claim explicitly.
  Subgroup g1(t, e1, gens1);
  Subgroup g2(t, e2, gens2);
  if (g1.index() != p)
    throw StructureError("index of G1 is " + std::to_string(g1.index()) + ", want p");
  if (g2.index() != p)
    throw StructureError("index of G2 is " + std::to_string(g2.index()) + ", want p");

  std::vector<int> img(n, -1);
  for (int id : e1) {
    NormalWord w = NormalWord::unrank(id, p, k);
    NormalWord shifted;
    shifted.exps.assign(k + 1, 0);
    for (int j = 0; j < k; ++j) shifted.exps[j + 1] = w.exps[j];
    img[id] = shifted.rank(p);
  }

  // The GroupHom constructor throws with the offending pair if the shift
  // fails the exhaustive homomorphism or injectivity sweep.
  GroupHom shift(g1, g2, std::move(img), true);
  if (!shift.is_onto_target())
    throw StructureError("shift is not onto G2");

  return ShiftData{g, g1, g2, std::move(shift)};
}

} // namespace bsll
