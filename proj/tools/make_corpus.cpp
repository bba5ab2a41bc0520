// Regenerates the bundled fixtures: make_corpus <output-dir>
#include <iostream>
#include <string>

#include "projrep/fixtures.hpp"
#include "projrep/io.hpp"

int main(int argc, char** argv) {
  using namespace projrep;
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  auto rep = [&](const std::string& name, const RayRepresentation& r) { io::write_json(dir + "/" + name, io::rep_to_json(r)); };

  io::write_json(dir + "/z2-group.json", io::group_to_json(make_cyclic(2)));
  rep("twisted-z2.json", fixtures::twisted_z2());
  rep("pauli-z2z2.json", fixtures::pauli_z2z2());
  for (std::size_t n = 2; n <= 4; ++n) rep("clock-shift-z" + std::to_string(n) + ".json", fixtures::clock_shift(n));
  for (std::size_t n = 2; n <= 12; ++n)
    rep("twisted-cyclic-z" + std::to_string(n) + ".json", fixtures::twisted_cyclic(n, 1000 + n));
  rep("s3-permutation.json", fixtures::s3_permutation());
  rep("s3-permutation-twisted.json", fixtures::twist_by_coboundary(fixtures::s3_permutation(), 6, 2024));
  rep("s3-standard.json", fixtures::s3_standard());
  rep("q8-su2.json", fixtures::q8_su2());
  rep("q8-su2-twisted.json", fixtures::twist_by_coboundary(fixtures::q8_su2(), 8, 88));

  const ExponentTable z2 = exponent_from_factor(build_phase_table(fixtures::twisted_z2()));
  io::write_json(dir + "/twisted-z2-exponent.json", io::exponent_to_json(z2));
  io::write_json(dir + "/zero-z2-exponent.json", io::exponent_to_json(ExponentTable::zero(make_cyclic(2))));

  CounterRng rng(7);
  io::write_json(dir + "/random-u8.json", {{"matrix", io::matrix_to_json(random_unitary(8, rng))}});
  io::write_json(dir + "/su2-so3-section.json",
                 {{"kind", "su2"}, {"mode", "SpinHalfSo3"}, {"twist", true}});
  io::write_json(dir + "/su2-spin-half.json", {{"kind", "su2"}, {"mode", "SpinHalf"}, {"twist", false}});
  io::write_json(dir + "/su2-vector.json", {{"kind", "su2"}, {"mode", "Vector"}, {"twist", true}});
  io::write_json(dir + "/config-default.json",
                 {{"seed", 7}, {"alpha", 0.5}, {"radius", 0.3}, {"samples", 1000}});
  std::cout << "corpus written to " << dir << "\n";
  return 0;
}
