#include "coexrisk/radio.hpp"

#include <cmath>

namespace coexrisk {

void RadioParams::validate() const {
    for (double v : {tx_power_dbm, noise_density_dbm_hz, bandwidth_hz, noise_figure_wifi_db, noise_figure_lte_db,
                     aclr_wifi_db, aclr_lte_db, acs_wifi_ap_db, acs_wifi_user_db, acs_lte_ap_db, acs_lte_user_db}) {
        if (!std::isfinite(v)) throw ConfigError("radio parameters must be finite");
    }
    if (bandwidth_hz <= 0.0) throw ConfigError("bandwidth must be positive");
}

double acir_linear(double aclr_db, double acs_db) {
    return 1.0 / (1.0 / db_to_linear(aclr_db) + 1.0 / db_to_linear(acs_db));
}

double acir_linear(const RadioParams& radio, Technology tx, Technology rx, RxRole role) {
    return acir_linear(radio.aclr_db(tx), radio.acs_db(rx, role));
}

double noise_floor_dbm(double noise_density_dbm_hz, double bandwidth_hz, double noise_figure_db) {
    return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double noise_floor_dbm(const RadioParams& radio, Technology rx) {
    return noise_floor_dbm(radio.noise_density_dbm_hz, radio.bandwidth_hz, radio.noise_figure_db(rx));
}

}  // namespace coexrisk
