// The G2 point alpha = 1, k = -2/3: build the generators, print their free field form and
// check a few brackets of the G2 table.

#include <iostream>

#include "dsred/freefield.hpp"

using namespace dsred;

int main() {
  Reduction R(Scalar(1), Scalar(Rational(-2, 3)));
  auto gs = build_generators(R);
  std::cout << "c = " << to_string(gs.c) << ", eps = " << to_string(gs.eps) << ", mu = " << to_string(gs.mu)
            << "\n\n";

  FreeField F(R, gs.sqrt_k);
  auto& E = F.engine();
  Assignment sv = sv_images(E, project_images(F, sw_images(gs)), gs.mu);
  for (auto* n : {"G", "Phi", "X"}) std::cout << n << " = " << to_string(F.ambient(), sv.at(n)) << "\n\n";

  auto table = sv_table();
  for (auto [a, b] : {std::pair{"Phi", "Phi"}, {"G", "Phi"}, {"X", "X"}}) {
    auto rhs = table.bracket(table.ambient().find(a), table.ambient().find(b));
    Evaluator ev(table, sv, E);
    bool ok = E.bracket(sv.at(a), sv.at(b)) == ev(*rhs);
    std::cout << "[" << a << " _ " << b << "] = " << to_string(table.ambient(), *rhs) << "  " << (ok ? "holds" : "FAILS")
              << "\n";
  }
}
