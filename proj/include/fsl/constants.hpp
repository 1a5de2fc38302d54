#pragma once

namespace fsl::constants {

inline constexpr double planck_h = 6.62607015e-34;      // J s (exact, SI 2019)
inline constexpr double speed_of_light = 299792458.0;   // m/s (exact)
inline constexpr double hc = planck_h * speed_of_light; // J m

inline constexpr double earth_radius_m = 6.37e6;

// Scale height of the aerosol/molecular extinction profile, exp(-h/6600).
inline constexpr double extinction_scale_height_m = 6600.0;

}  // namespace fsl::constants
