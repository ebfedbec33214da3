#pragma once

#include <algorithm>
#include <vector>

namespace affsing::detail {

/// Calls f(q) once for every q in Z^m with ||q||_inf == H, up to sign (the
/// first nonzero entry is positive).
template <class F>
void for_each_in_shell(int m, long long H, F&& f) {
  std::vector<long long> q(static_cast<std::size_t>(m), 0);
  // j is the first coordinate with |q_j| = H. Earlier coordinates lie in
  // [-(H-1), H-1]; later ones in [-H, H]. The sign rule lets q_j = H only
  // when every earlier coordinate is zero, otherwise q_j = +-H.
  for (int j = 0; j < m; ++j) {
    std::vector<long long> lo(static_cast<std::size_t>(m)), hi(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
      const long long lim = c < j ? H - 1 : H;
      lo[static_cast<std::size_t>(c)] = -lim;
      hi[static_cast<std::size_t>(c)] = lim;
    }
    lo[static_cast<std::size_t>(j)] = hi[static_cast<std::size_t>(j)] = 0;
    for (int c = 0; c < m; ++c) q[static_cast<std::size_t>(c)] = lo[static_cast<std::size_t>(c)];
    for (;;) {
      bool prefix_zero = std::all_of(q.begin(), q.begin() + j, [](long long v) { return v == 0; });
      if (prefix_zero) {
        q[static_cast<std::size_t>(j)] = H;
        f(q);
      } else {
        auto first = std::find_if(q.begin(), q.begin() + j, [](long long v) { return v != 0; });
        if (*first > 0) {
          q[static_cast<std::size_t>(j)] = H;
          f(q);
          q[static_cast<std::size_t>(j)] = -H;
          f(q);
        }
      }
      q[static_cast<std::size_t>(j)] = 0;
      int c = m - 1;
      while (c >= 0) {
        if (c == j) {
          --c;
          continue;
        }
        if (q[static_cast<std::size_t>(c)] < hi[static_cast<std::size_t>(c)]) {
          ++q[static_cast<std::size_t>(c)];
          break;
        }
        q[static_cast<std::size_t>(c)] = lo[static_cast<std::size_t>(c)];
        --c;
      }
      if (c < 0) break;
    }
  }
}

}  // namespace affsing::detail
