#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hfgraph/dstruct.hpp"

namespace hfgraph {

// Pair of pants times a circle; boundaries rho, sigma, tau.
DModule pants();
DModule pants_middle_unreduced();  // the seven-generator form before cancelling t -> s
DModule mirror_pants();

// One-boundary solid tori, by their type D data.
enum class TorusData {
  Rho12Loop,  // one generator in iota0 with a rho12 self-arrow
  Rho23Loop,  // one generator in iota1 with a rho23 self-arrow
  Rho1Rho3,   // a (iota0) -> b (iota1) by rho1 and by rho3
  Rho2Rho123  // b (iota1) -> a (iota0) by rho2, a -> b by rho123
};
DModule solid_torus_data(TorusData d);
// Solid torus whose meridian is the alpha arc with the given index; it fills
// a boundary whose fiber is that arc along the base.
DModule solid_torus(int meridian_arc);
// The diagonal-slope solid torus used to build the Euler number twist of the given sign.
DModule solid_torus_twisting(int sign);

DModule identity_dd();
DModule self_gluer();

// Annulus bundle with Euler number sign; boundary 0 has fiber alpha_arc,
// boundary 1 has the other fiber arc. Gluing boundary 0 to a boundary with
// fiber 3 - arc changes that bundle's Euler number by sign.
DModule twist(int arc, int sign);

// S^1 times a genus one surface with two boundaries; fibers alpha2, alpha1.
DModule genus_piece();

// Attach boundary 0 to a boundary whose fiber is alpha_from; boundary 1 is
// then the same boundary with fiber alpha_(3 - from).
DModule fiber_flip(int from);

// Memoized, thread-safe access by name. Names: pants, mirror_pants,
// identity_dd, self_gluer, genus_piece, solid_torus_1, solid_torus_2,
// twist_1_plus, twist_1_minus, twist_2_plus, twist_2_minus, flip_1_2, flip_2_1.
class BlockCatalog {
 public:
  static BlockCatalog& instance();
  const DModule& get(const std::string& name);
  static std::vector<std::string> names();

 private:
  std::mutex mu_;
  std::map<std::string, DModule> store_;
};

}  // namespace hfgraph
