// Walk through the A2 basis: dual basis, ordered partitions with their block
// projections, one pointwise check and a full chamber certificate.

#include <iostream>

#include "boulder/boulder.hpp"

int main() {
  using namespace boulder;
  Workspace ws(named_basis("A2"), "A2");
  const auto& b = ws.basis();

  std::cout << "gram  " << basis_to_json(b)["gram"].dump() << '\n';
  for (int i = 0; i < b.rank(); ++i) std::cout << "dual " << b.labels()[i] << " = " << to_string(b.dual(i)) << '\n';

  for (const auto& f : ws.frames(Subset(), ws.full())) {
    std::cout << "partition " << to_json(f.partition()).dump();
    f.ground().for_each([&](int i) { std::cout << "  " << to_string(f.proj_element(i)); });
    std::cout << '\n';
  }

  Params prm;
  prm.lambda = QVector{1, 1};
  prm.h = QVector{-1, 2};
  for (const auto& v : verify(IdentityId::BOULDER_21, ws, prm))
    std::cout << "pointwise lhs=" << v.lhs << " rhs=" << v.rhs << (v.pass ? " pass" : " FAIL") << '\n';

  prm.h.reset();
  const CertificateReport rep = certify(IdentityId::BOULDER_21, ws, prm);
  std::cout << "certificate cells=" << rep.cells.size() << " checks=" << rep.checks
            << " failed=" << rep.failed_checks << (rep.pass ? " pass" : " FAIL") << '\n';
  return rep.pass ? 0 : 1;
}
