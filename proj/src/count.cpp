#include "bsll/count.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "bsll/serialize.hpp"

namespace bsll {

namespace {

long long ipow_ll(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

} // namespace

long long paper_lower_bound(int p, int k) {
  return k >= 3 ? ipow_ll(p, static_cast<long long>(k) * (k - 3) / 2) : 1;
}

long long paper_upper_bound(int p, int k) {
  return ipow_ll(p, (static_cast<long long>(k) * k + k + 2) / 2);
}

std::vector<MatrixA> enumerate_matrices(int p, int k, long long max_count) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int free = k * (k - 1) / 2;
  long long total = 1;
  for (int i = 0; i < free; ++i) {
    total *= p;
    if (total > max_count)
      throw CapExceeded("matrix family size exceeds " + std::to_string(max_count));
  }

  std::vector<MatrixA> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<int> digits(free, 0);
  for (long long c = 0; c < total; ++c) {
    std::vector<std::vector<int>> rows(k - 1);
    int pos = 0;
    for (int s = 1; s <= k - 1; ++s) {
      rows[s - 1].resize(s);
      for (int t = 0; t < s; ++t) rows[s - 1][t] = digits[pos++];
    }
    out.emplace_back(p, k, std::move(rows));
    // lexicographic: last digit fastest
    for (int i = free - 1; i >= 0; --i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<int> partition_classes(
    const std::vector<LoopCovering>& coverings,
    const std::function<bool(const LoopCovering&, const LoopCovering&)>& related) {
  std::vector<int> rep_of(coverings.size(), -1);
  std::vector<int> reps;
  for (size_t i = 0; i < coverings.size(); ++i) {
    for (int r : reps)
      if (related(coverings[i], coverings[r])) {
        rep_of[i] = r;
        break;
      }
    if (rep_of[i] < 0) {
      rep_of[i] = static_cast<int>(i);
      reps.push_back(static_cast<int>(i));
    }
  }
  return rep_of;
}

namespace {

struct PerMatrix {
  bool consistent = false;
  bool faithful = false;
  std::vector<LoopCovering> coverings;
};

PerMatrix process_matrix(const MatrixA& a, const CountOptions& opts) {
  PerMatrix out;
  GAGroup g = build_group(a, BuildOptions{opts.max_order, {}});
  if (!g.consistent) return out;
  out.consistent = true;

  ShiftData sd = shift_data(g);
  const auto faith = is_faithful_loop(sd.group.table, sd.g1, sd.g2, sd.shift);
  if (!faith.faithful) return out;
  out.faithful = true;

  const GroupTable& t = *sd.group.table;
  for (int u = 0; u < t.order(); ++u) {
    if (sd.g1.contains(u) || sd.g2.contains(u)) continue;
    if (element_order(t, u) != a.p()) continue;
    LoopCovering c = from_shift(sd, u);
    const auto violations = validate(c);
    if (!violations.empty())
      throw StructureError("covering from " + a.to_string() + " with u=" +
                           std::to_string(u) + " failed validation: " +
                           violations.front().where + ": " + violations.front().what);
    out.coverings.push_back(std::move(c));
  }
  return out;
}

std::vector<PerMatrix> process_all(const std::vector<MatrixA>& matrices,
                                   const CountOptions& opts) {
  std::vector<PerMatrix> results(matrices.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < matrices.size(); ++i) results[i] = process_matrix(matrices[i], opts);
    return results;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      try {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= matrices.size()) break;
          results[i] = process_matrix(matrices[i], opts);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

} // namespace

std::string count_input_hash(int p, int k, int max_order) {
  return fnv1a_hex(std::string(kToolVersion) + "|count|p=" + std::to_string(p) +
                   "|k=" + std::to_string(k) + "|max_order=" + std::to_string(max_order));
}

CountReport count_overlattices(int p, int k, const CountOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  CountReport rep;
  rep.p = p;
  rep.k = k;
  rep.n = ipow_ll(p, k);
  rep.tool_version = kToolVersion;
  rep.input_hash = count_input_hash(p, k, opts.max_order);
  rep.paper_lower = paper_lower_bound(p, k);
  rep.paper_upper = paper_upper_bound(p, k);

  const auto matrices = enumerate_matrices(p, k);
  rep.matrices_total = static_cast<long long>(matrices.size());

  const auto t1 = std::chrono::steady_clock::now();
  const auto results = process_all(matrices, opts);
  rep.timings_ms["build_and_filter"] = ms_since(t1);

  std::vector<LoopCovering> coverings;
  for (const auto& r : results) {
    rep.consistent_count += r.consistent;
    rep.faithful_count += r.faithful;
    for (const auto& c : r.coverings) coverings.push_back(c);
  }
  rep.covering_count = static_cast<long long>(coverings.size());

  const auto t2 = std::chrono::steady_clock::now();
  const auto suff_rep = partition_classes(coverings, [](const LoopCovering& a,
                                                        const LoopCovering& b) {
    return iso_sufficient(a, b).has_value();
  });
  std::vector<int> suff_reps;
  for (size_t i = 0; i < coverings.size(); ++i)
    if (suff_rep[i] == static_cast<int>(i)) suff_reps.push_back(static_cast<int>(i));
  rep.classes_sufficient = static_cast<long long>(suff_reps.size());
  rep.timings_ms["classes_sufficient"] = ms_since(t2);

  // A sufficient witness is a necessary witness, so the necessary partition
  // coarsens the sufficient one; classing its representatives is enough.
  const auto t3 = std::chrono::steady_clock::now();
  std::vector<LoopCovering> suff_rep_covs;
  for (int i : suff_reps) suff_rep_covs.push_back(coverings[i]);
  const auto nec_rep = partition_classes(suff_rep_covs, [](const LoopCovering& a,
                                                           const LoopCovering& b) {
    return iso_necessary(a, b).has_value();
  });
  for (size_t i = 0; i < suff_rep_covs.size(); ++i)
    if (nec_rep[i] == static_cast<int>(i)) rep.reps_necessary.push_back(suff_rep_covs[i]);
  rep.classes_necessary = static_cast<long long>(rep.reps_necessary.size());
  rep.timings_ms["classes_necessary"] = ms_since(t3);

  for (int i : suff_reps) rep.reps_sufficient.push_back(coverings[i]);

  rep.lower_ok = k < 3 || rep.classes_necessary >= rep.paper_lower;
  rep.upper_ok = rep.classes_sufficient <= rep.paper_upper;
  rep.bracket_ok = rep.classes_necessary <= rep.classes_sufficient &&
                   rep.covering_count >= rep.classes_sufficient &&
                   rep.consistent_count <= rep.matrices_total &&
                   rep.covering_count <= rep.faithful_count * ipow_ll(p, k + 1);
  rep.timings_ms["total"] = ms_since(t0);
  return rep;
}

FamilyReport lower_bound_family(int p, int k, const CountOptions& opts) {
  if (k < 3) throw std::invalid_argument("the family needs k >= 3");
  const auto t0 = std::chrono::steady_clock::now();
  FamilyReport rep;
  rep.p = p;
  rep.k = k;
  rep.tool_version = kToolVersion;
  rep.input_hash = fnv1a_hex(std::string(kToolVersion) + "|family|p=" + std::to_string(p) +
                             "|k=" + std::to_string(k) +
                             "|max_order=" + std::to_string(opts.max_order));
  rep.paper_lower = paper_lower_bound(p, k);

  std::vector<MatrixA> family;
  for (const auto& a : enumerate_matrices(p, k))
    if (a.last_row_zero()) family.push_back(a);
  rep.members_total = static_cast<long long>(family.size());

  std::vector<LoopCovering> coverings;
  for (const auto& a : family) {
    GAGroup g = build_group(a, BuildOptions{opts.max_order, {}});
    if (!g.consistent)
      throw StructureError("family member " + a.to_string() +
                           " is inconsistent: " + g.failure);
    ShiftData sd = shift_data(g);
    NormalWord w;
    w.exps.assign(k + 1, 0);
    w.exps[0] = w.exps[k] = 1; // u = g_0 g_k
    LoopCovering c = from_shift(sd, w.rank(p));
    const auto violations = validate(c);
    if (!violations.empty())
      throw StructureError("family member " + a.to_string() + " failed validation: " +
                           violations.front().where + ": " + violations.front().what);
    coverings.push_back(std::move(c));
  }
  rep.members_valid = static_cast<long long>(coverings.size());

  const auto rep_of = partition_classes(coverings, [](const LoopCovering& a,
                                                      const LoopCovering& b) {
    return iso_necessary(a, b).has_value();
  });
  for (size_t i = 0; i < coverings.size(); ++i)
    if (rep_of[i] == static_cast<int>(i)) rep.representatives.push_back(coverings[i]);
  rep.classes_necessary = static_cast<long long>(rep.representatives.size());
  rep.bound_ok = rep.classes_necessary >= rep.paper_lower;
  rep.timings_ms["total"] = ms_since(t0);
  return rep;
}

} // namespace bsll
