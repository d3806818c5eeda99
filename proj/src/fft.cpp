#include "lctnumra/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace lctnumra {

namespace {
std::mutex planner_mutex;  // FFTW planning is not thread safe
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
    if (sign != -1 && sign != 1) throw std::invalid_argument("dft: sign must be +-1");
    const int n = static_cast<int>(x.size());
    std::vector<cplx> out(x.size());
    if (n == 0) return out;
    std::vector<cplx> in = x;  // FFTW_ESTIMATE leaves input intact, but keep x const anyway
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace lctnumra
