#include "yang/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace yang {

namespace {

// Solves M x = b over Q by Gaussian elimination; M is nonsingular (Cartan).
std::vector<Rat> solve(std::vector<std::vector<Rat>> m, std::vector<Rat> b) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

}  // namespace

int CartanData::coroot_pairing(int i, const std::vector<int>& beta) const {
  int s = 0;
  for (int j = 0; j < rank; ++j) s += c[i][j] * beta[j];
  return s;
}

std::vector<int> CartanData::reflect(int i, const std::vector<int>& beta) const {
  std::vector<int> r = beta;
  r[i] -= coroot_pairing(i, beta);
  return r;
}

std::vector<Rat> CartanData::to_root_coords(const std::vector<Rat>& w) const {
  // w_i = sum_j c_ij a_j since alpha_j = sum_i c_ij varpi_i.
  std::vector<std::vector<Rat>> m(rank, std::vector<Rat>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) m[i][j] = c[i][j];
  return solve(std::move(m), w);
}

std::vector<Rat> CartanData::to_weight_coords(const std::vector<Rat>& a) const {
  std::vector<Rat> w(rank, Rat(0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) w[i] += Rat(c[i][j]) * a[j];
  return w;
}

bool CartanData::weight_leq(const std::vector<Rat>& lambda, const std::vector<Rat>& mu) const {
  std::vector<Rat> diff(rank);
  for (int i = 0; i < rank; ++i) diff[i] = mu[i] - lambda[i];
  for (const Rat& a : to_root_coords(diff))
    if (a < 0) return false;
  return true;
}

std::vector<int> CartanData::highest_root() const {
  return positive_roots.back();
}

CartanData cartan(const std::string& label) {
  if (label.size() < 2 || !std::isalpha(static_cast<unsigned char>(label[0])))
    throw ParseError("bad type label: '" + label + "'");
  const char type = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  int n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoi(label.substr(1), &pos);
    if (pos + 1 != label.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError("bad type label: '" + label + "'");
  }

  auto ok = [&](bool cond) {
    if (!cond) throw ParseError("unsupported type: '" + label + "'");
  };

  CartanData cd;
  cd.label = std::string(1, type) + std::to_string(n);
  cd.rank = n;
  cd.c.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) cd.c[i][i] = 2;
  cd.d.assign(n, 1);
  cd.bar.resize(n);
  std::iota(cd.bar.begin(), cd.bar.end(), 0);

  auto edge = [&](int i, int j) { cd.c[i][j] = cd.c[j][i] = -1; };
  auto chain = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) edge(i, i + 1);
  };

  switch (type) {
    case 'A':
      ok(n >= 1);
      chain(0, n - 1);
      cd.dual_coxeter = n + 1;
      for (int i = 0; i < n; ++i) cd.bar[i] = n - 1 - i;
      break;
    case 'B':
      ok(n >= 2);
      chain(0, n - 1);
      cd.c[n - 1][n - 2] = -2;
      for (int i = 0; i + 1 < n; ++i) cd.d[i] = 2;
      cd.dual_coxeter = 2 * n - 1;
      break;
    case 'C':
      ok(n >= 2);
      chain(0, n - 1);
      cd.c[n - 2][n - 1] = -2;
      cd.d[n - 1] = 2;
      cd.dual_coxeter = n + 1;
      break;
    case 'D':
      ok(n >= 4);
      chain(0, n - 2);
      edge(n - 3, n - 1);
      cd.dual_coxeter = 2 * n - 2;
      if (n % 2 == 1) std::swap(cd.bar[n - 2], cd.bar[n - 1]);
      break;
    case 'E':
      ok(n == 6 || n == 7 || n == 8);
      edge(0, 2);
      edge(1, 3);
      chain(2, n - 1);
      cd.dual_coxeter = n == 6 ? 12 : n == 7 ? 18 : 30;
      if (n == 6) {
        std::swap(cd.bar[0], cd.bar[5]);
        std::swap(cd.bar[2], cd.bar[4]);
      }
      break;
    case 'F':
      ok(n == 4);
      chain(0, 3);
      cd.c[2][1] = -2;
      cd.d[0] = cd.d[1] = 2;
      cd.dual_coxeter = 9;
      break;
    case 'G':
      ok(n == 2);
      cd.c[0][1] = -1;
      cd.c[1][0] = -3;
      cd.d[0] = 3;
      cd.dual_coxeter = 4;
      break;
    default:
      ok(false);
  }

  cd.dij.assign(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cd.dij[i][j] = Rat(cd.d[i] * cd.c[i][j], 2);
      cd.dij[i][j].canonicalize();
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cd.d[i] * cd.c[i][j] != cd.d[j] * cd.c[j][i])
        throw std::logic_error("symmetrizer mismatch in " + cd.label);

  cd.kappa = Rat(*std::max_element(cd.d.begin(), cd.d.end()) * cd.dual_coxeter, 2);
  cd.kappa.canonicalize();

  // Orbit of the simple roots under simple reflections; positive = all
  // coefficients nonnegative.
  std::set<std::vector<int>> orbit;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    orbit.insert(e);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::set<std::vector<int>> next = orbit;
    for (const auto& r : orbit)
      for (int i = 0; i < n; ++i)
        if (next.insert(cd.reflect(i, r)).second) grew = true;
    orbit.swap(next);
  }
  for (const auto& r : orbit)
    if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }))
      cd.positive_roots.push_back(r);
  std::sort(cd.positive_roots.begin(), cd.positive_roots.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              int ha = std::accumulate(a.begin(), a.end(), 0);
              int hb = std::accumulate(b.begin(), b.end(), 0);
              return ha != hb ? ha < hb : a < b;
            });
  return cd;
}

}  // namespace yang
