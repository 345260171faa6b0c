#include "xtalk/pipeline.hpp"

namespace xtalk {

RunResult run_tenants(const DeviceTopology& device, const CrosstalkModel& model,
                      std::vector<MultiTenantProgram::Tenant> tenants, Seeds seeds,
                      uint64_t shots) {
    RunResult result;
    result.program = merge_tenants(std::move(tenants), device);
    for (const auto& tenant : result.program.tenants) {
        result.routed.push_back(transpile(tenant.circuit, device, tenant.layout, seeds.transpile));
    }
    result.flipmap = accumulate_flip_probs(result.program, result.routed, model);
    result.counts = sample_shots(result.program, result.flipmap, shots, seeds.rng);
    return result;
}

}  // namespace xtalk
