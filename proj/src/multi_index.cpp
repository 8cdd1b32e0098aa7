#include "monicdyn/multi_index.hpp"

namespace monicdyn {

namespace {

void fill(int nvars, int pos, int remaining, MultiIndex &cur, std::vector<MultiIndex> &out) {
  if (pos == nvars - 1) {
    cur.set(pos, remaining);
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur.set(pos, e);
    fill(nvars, pos + 1, remaining - e, cur, out);
  }
}

} // namespace

std::vector<MultiIndex> indices_of_degree(int nvars, int degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (degree == 0)
      out.emplace_back(0);
    return out;
  }
  MultiIndex cur(nvars);
  fill(nvars, 0, degree, cur, out);
  return out;
}

std::vector<MultiIndex> ind_star(int N, int d) {
  std::vector<MultiIndex> out;
  for (const auto &m : indices_of_degree(N + 1, d))
    if (m.last() > 0 && m.last() < d)
      out.push_back(m);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace monicdyn
