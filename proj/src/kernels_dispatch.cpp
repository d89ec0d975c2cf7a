#include "obh/kernels.hpp"
#include <cstdlib>
#include <cstring>
#include <string>

namespace obh::kern {
namespace {

const Ops* g_active = nullptr;
std::string g_name;

bool cpu_has_avx2() {
#if defined(OBH_BUILD_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* pick(const char* want, std::string& name) {
    if (want && std::strcmp(want, "scalar") == 0) { name = "scalar"; return &scalar_ops; }
#ifdef OBH_BUILD_AVX2
    if (want && std::strcmp(want, "avx2") == 0) {
        if (!cpu_has_avx2()) return nullptr;
        name = "avx2";
        return &avx2_ops;
    }
#endif
#ifdef OBH_BUILD_NEON
    if (want && std::strcmp(want, "neon") == 0) { name = "neon"; return &neon_ops; }
#endif
    if (want && std::strcmp(want, "auto") != 0) return nullptr;
#ifdef OBH_BUILD_AVX2
    if (cpu_has_avx2()) { name = "avx2"; return &avx2_ops; }
#endif
#ifdef OBH_BUILD_NEON
    name = "neon";
    return &neon_ops;
#else
    name = "scalar";
    return &scalar_ops;
#endif
}

void init_once() {
    if (g_active) return;
    const char* env = std::getenv("ORLICZ_BIHARM_SIMD");
    const Ops* ops = pick(env ? env : "auto", g_name);
    if (!ops) ops = pick("auto", g_name); // bad env value falls back to auto
    g_active = ops;
}

} // namespace

const Ops& active() {
    init_once();
    return *g_active;
}

const char* active_backend_name() {
    init_once();
    return g_name.c_str();
}

bool force_backend(const char* name) {
    std::string n;
    const Ops* ops = pick(name, n);
    if (!ops) return false;
    g_active = ops;
    g_name = n;
    return true;
}

} // namespace obh::kern
