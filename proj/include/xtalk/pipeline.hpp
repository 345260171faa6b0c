#pragma once

#include <cstdint>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/noise.hpp"
#include "xtalk/router.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

struct Seeds {
    uint64_t transpile = 0;
    uint64_t rng = 0;
};

struct VictimSpec {
    LogicalCircuit circuit;
    Layout layout;
};

struct RunResult {
    MultiTenantProgram program;
    std::vector<RoutedCircuit> routed;  // per tenant
    FlipProbMap flipmap;
    std::vector<CountsMap> counts;  // per tenant
};

// Full route -> noise -> sample pipeline over co-scheduled tenants.
RunResult run_tenants(const DeviceTopology& device, const CrosstalkModel& model,
                      std::vector<MultiTenantProgram::Tenant> tenants, Seeds seeds,
                      uint64_t shots);

}  // namespace xtalk
