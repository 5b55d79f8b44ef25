#include "bubblebuoy/gas_inventory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bubblebuoy {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool fraction(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void require_duty(double duty, const char* name) {
    require(fraction(duty), std::string(name) + " must lie in [0, 1], got " + std::to_string(duty));
}

}  // namespace

void InventoryParams::validate() const {
    require(non_negative(q_max), "q_max must be non-negative");
    require(non_negative(electrode_detach_diameter), "electrode_detach_diameter must be non-negative");
    require(fraction(capture_efficiency), "capture_efficiency must lie in [0, 1]");
    require(fraction(releasable_split), "releasable_split must lie in [0, 1]");
    require(non_negative(k_release_I), "k_release_I must be non-negative");
    require(non_negative(k_release_II), "k_release_II must be non-negative");
    require(k_release_I > k_release_II, "k_release_I must exceed k_release_II");
    require(non_negative(k_dissolve), "k_dissolve must be non-negative");
    require(non_negative(canopy_capacity), "canopy_capacity must be non-negative");
    require(non_negative(electrode_holdup), "electrode_holdup must be non-negative");
}

GasFlows& GasFlows::operator+=(const GasFlows& o) {
    source += o.source;
    escaped += o.escaped;
    released += o.released;
    dissolved += o.dissolved;
    overflow += o.overflow;
    disturbance += o.disturbance;
    return *this;
}

double electrolysis_rate(double duty, const InventoryParams& params) {
    require_duty(duty, "electrolysis duty");
    return duty * params.q_max;
}

InventoryStep step_inventory(const GasInventory& inv, double elec_duty, double vib_duty, double dt,
                             const InventoryParams& params) {
    require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
    require_duty(vib_duty, "vibration duty");

    InventoryStep out{inv, {}, false};
    GasInventory& g = out.inventory;
    GasFlows& f = out.flows;

    // Source.
    const double produced = electrolysis_rate(elec_duty, params) * dt;
    g.v_electrode += produced;
    f.source = produced;

    // Transfer from the electrodes to the canopy.
    if (g.v_electrode > params.electrode_holdup) {
        const double detached = g.v_electrode - params.electrode_holdup;
        g.v_electrode = params.electrode_holdup;
        const double captured = params.capture_efficiency * detached;
        const double to_releasable = params.releasable_split * captured;
        g.v_releasable += to_releasable;
        g.v_residual += captured - to_releasable;
        f.escaped = detached - captured;
    }

    // Vibration release.
    if (vib_duty > 0.0) {
        const double rel = std::min(g.v_releasable, params.k_release_I * vib_duty * g.v_releasable * dt);
        const double res = std::min(g.v_residual, params.k_release_II * vib_duty * g.v_residual * dt);
        g.v_releasable -= rel;
        g.v_residual -= res;
        f.released = rel + res;
    }

    // Dissolution.
    const double decay = std::min(1.0, params.k_dissolve * dt);
    const double d_rel = decay * g.v_releasable;
    const double d_res = decay * g.v_residual;
    g.v_releasable -= d_rel;
    g.v_residual -= d_res;
    f.dissolved = d_rel + d_res;

    // Overflow.
    const double excess = g.canopy() - params.canopy_capacity;
    if (excess > 0.0) {
        f.overflow = remove_canopy_gas(g, excess);
        out.overflowed = true;
    }
    return out;
}

double remove_canopy_gas(GasInventory& inv, double volume) {
    require(non_negative(volume), "removed volume must be non-negative");
    const double from_releasable = std::min(volume, inv.v_releasable);
    inv.v_releasable -= from_releasable;
    const double from_residual = std::min(volume - from_releasable, inv.v_residual);
    inv.v_residual -= from_residual;
    return from_releasable + from_residual;
}

double total_buoyant_gas(const GasInventory& inv) { return inv.v_electrode + inv.v_releasable + inv.v_residual; }

double saturation_fraction(const GasInventory& inv, const InventoryParams& params) {
    if (params.canopy_capacity <= 0.0) return inv.canopy() > 0.0 ? 1.0 : 0.0;
    return std::clamp(inv.canopy() / params.canopy_capacity, 0.0, 1.0);
}

GasInventory saturated_canopy(const InventoryParams& params) {
    GasInventory inv;
    inv.v_releasable = params.releasable_split * params.canopy_capacity;
    inv.v_residual = params.canopy_capacity - inv.v_releasable;
    return inv;
}

void validate_inventory(const GasInventory& inv, const InventoryParams& params) {
    require(non_negative(inv.v_electrode), "v_electrode must be non-negative");
    require(non_negative(inv.v_releasable), "v_releasable must be non-negative");
    require(non_negative(inv.v_residual), "v_residual must be non-negative");
    // Relative slack so a canopy filled to capacity by arithmetic still passes.
    require(inv.canopy() <= params.canopy_capacity * (1.0 + 1e-12), "canopy gas exceeds canopy_capacity");
}

}  // namespace bubblebuoy
