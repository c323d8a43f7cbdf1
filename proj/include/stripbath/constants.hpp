// constants.hpp — mathematical and physical constants
#pragma once

namespace stripbath {

inline constexpr double pi     = 3.141592653589793238;
inline constexpr double two_pi = 6.283185307179586477;

// zeta(3), Apery's constant
inline constexpr double zeta3 = 1.202056903159594285;

// CODATA 2018 (exact SI definitions): hbar = h/2pi with h = 6.62607015e-34 J s
inline constexpr double hbar = 1.054571817646156391e-34;  // J s
inline constexpr double k_boltzmann = 1.380649e-23;       // J/K

}  // namespace stripbath
