#pragma once

namespace gch::parallel {

// Process-global switch for the OpenMP kernel paths. The serial and OpenMP
// variants of every kernel produce bit-identical results (disjoint writes,
// no parallel reductions), so the switch only affects speed. Setting
// GCH_SERIAL=1 in the environment disables the OpenMP paths.
bool enabled();
void set_enabled(bool on);
int hardware_threads();

}  // namespace gch::parallel
