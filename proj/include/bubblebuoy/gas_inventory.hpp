#pragma once

// Lumped gas bookkeeping for the buoyancy device.
//
// Three stores:
//   electrode  - bubbles still anchored on the electrolysis combs
//   releasable - canopy gas in bubbles large enough to be shaken loose
//   residual   - canopy gas in small bubbles that vibration barely moves
//
// Gas leaves the system by escaping past the canopy, by vibration release,
// by dissolution into the water, by canopy overflow, or by an injected
// disturbance. Every step reports those flows so the caller can close a
// volume balance.

namespace bubblebuoy {

struct GasInventory {
    double v_electrode = 0.0;   // m^3
    double v_releasable = 0.0;  // m^3
    double v_residual = 0.0;    // m^3

    double canopy() const { return v_releasable + v_residual; }
    bool operator==(const GasInventory&) const = default;
};

struct InventoryParams {
    double q_max = 3.17e-9;                     // m^3/s electrolysis gas at full duty
    double electrode_detach_diameter = 1.0e-3;  // m, size at which electrode bubbles lift off
    double capture_efficiency = 1.0;            // fraction of detached gas trapped by the canopy
    double releasable_split = 0.6;              // fraction of trapped gas landing in releasable bubbles
    double k_release_I = 0.057;                 // 1/s at full vibration
    double k_release_II = 0.01;                 // 1/s at full vibration
    double k_dissolve = 1e-4;                   // 1/s
    double canopy_capacity = 1.019e-6;          // m^3
    double electrode_holdup = 5e-8;             // m^3 anchored before bubbles detach

    void validate() const;
};

/// Volumes that moved during one step. All entries are non-negative.
struct GasFlows {
    double source = 0.0;
    double escaped = 0.0;
    double released = 0.0;
    double dissolved = 0.0;
    double overflow = 0.0;
    double disturbance = 0.0;

    double sinks() const { return escaped + released + dissolved + overflow + disturbance; }
    GasFlows& operator+=(const GasFlows& o);
};

struct InventoryStep {
    GasInventory inventory;
    GasFlows flows;
    bool overflowed = false;
};

/// duty * q_max. Throws std::invalid_argument for duty outside [0, 1].
double electrolysis_rate(double duty, const InventoryParams& params);

/**
 * Advance the inventory by `dt` with the actuators held at the given duties.
 *
 * Substeps, in order: electrolysis into the electrode store; transfer of gas
 * above the electrode holdup to the canopy (split by releasable_split, the
 * uncaptured part escapes); vibration release at k_release_I / k_release_II
 * scaled by vib_duty; dissolution of canopy gas; overflow of canopy gas above
 * capacity, shed from the releasable store first.
 */
InventoryStep step_inventory(const GasInventory& inv, double elec_duty, double vib_duty, double dt,
                             const InventoryParams& params);

/// Removes up to `volume` from the canopy, releasable store first. Returns the
/// volume actually removed.
double remove_canopy_gas(GasInventory& inv, double volume);

double total_buoyant_gas(const GasInventory& inv);

/// Canopy fill level in [0, 1].
double saturation_fraction(const GasInventory& inv, const InventoryParams& params);

/// Inventory with the canopy filled to capacity in the releasable/residual ratio.
GasInventory saturated_canopy(const InventoryParams& params);

void validate_inventory(const GasInventory& inv, const InventoryParams& params);

}  // namespace bubblebuoy
