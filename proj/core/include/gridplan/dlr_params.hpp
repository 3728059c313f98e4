#pragma once

namespace gridplan {

// Multiplicative weather-response model for a conductor's transfer limit:
//   rating = base * [1 + temp_coeff*(temp_ref - T)]
//                 * [1 + wind_coeff*(min(v, wind_cap) - wind_ref)]
//                 * [1 - solar_coeff * S / solar_ref]
// clipped to [clip_lo, clip_hi] * base.
struct DlrParams {
    double base_rating_mva = 0.0;  // rating at reference weather
    double temp_coeff = 0.005;     // 1/degC
    double temp_ref_c = 25.0;
    double wind_coeff = 0.01;      // 1/(m/s)
    double wind_ref_mps = 0.6;
    double wind_cap_mps = 10.0;
    double solar_coeff = 0.05;
    double solar_ref_wm2 = 1000.0;
    double clip_lo = 0.5;  // fraction of base
    double clip_hi = 1.5;

    bool operator==(const DlrParams&) const = default;
};

}  // namespace gridplan
