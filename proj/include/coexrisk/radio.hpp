#pragma once

#include "coexrisk/types.hpp"

namespace coexrisk {

enum class RxRole { ap, user };

/// Transmit, noise and adjacent-channel parameters.
struct RadioParams {
    double tx_power_dbm = 23.0;
    double noise_density_dbm_hz = -174.0;
    double bandwidth_hz = 20e6;
    double noise_figure_wifi_db = 15.0;
    double noise_figure_lte_db = 9.0;
    double aclr_wifi_db = 26.0;
    double aclr_lte_db = 45.0;
    double acs_wifi_ap_db = 22.0;
    double acs_wifi_user_db = 22.0;
    double acs_lte_ap_db = 46.0;
    double acs_lte_user_db = 22.0;

    double aclr_db(Technology tx) const { return is_lte(tx) ? aclr_lte_db : aclr_wifi_db; }
    double acs_db(Technology rx, RxRole role) const {
        if (is_lte(rx)) return role == RxRole::ap ? acs_lte_ap_db : acs_lte_user_db;
        return role == RxRole::ap ? acs_wifi_ap_db : acs_wifi_user_db;
    }
    double noise_figure_db(Technology rx) const {
        return is_lte(rx) ? noise_figure_lte_db : noise_figure_wifi_db;
    }
    void validate() const;
};

/// ACIR = 1 / (1/ACLR + 1/ACS), all linear.
double acir_linear(double aclr_db, double acs_db);
inline double acir_db(double aclr_db, double acs_db) { return linear_to_db(acir_linear(aclr_db, acs_db)); }

/// ACIR from a `tx` transmitter into a `rx` receiver acting in `role`.
double acir_linear(const RadioParams& radio, Technology tx, Technology rx, RxRole role);

/// N0 + 10*log10(B) + NF.
double noise_floor_dbm(double noise_density_dbm_hz, double bandwidth_hz, double noise_figure_db);
double noise_floor_dbm(const RadioParams& radio, Technology rx);

inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

}  // namespace coexrisk
