// Minimal library walkthrough: build a system, verify it two independent
// ways, and print the machine-readable verdict.

#include <iostream>

#include "gti/json_io.hpp"

int main() {
    using namespace gti;

    Group z12 = make_group({12});
    GtiSystem onb = onb_delta_system(z12);

    TAlphaReport characterizing = verify_parseval_talpha(onb, 1e-10);
    Verdict brute = is_dual_bruteforce(onb, onb, 1e-10);

    std::cout << "characterizing equations: " << (characterizing.pass ? "pass" : "fail")
              << " (max residual " << characterizing.max_residual << ")\n";
    std::cout << "frame operator oracle:    " << (brute.pass ? "pass" : "fail")
              << " (max residual " << brute.max_residual << ")\n";

    FrameBounds bounds = frame_bounds_bruteforce(onb);
    std::cout << "frame bounds: [" << bounds.lower << ", " << bounds.upper << "]\n";

    std::cout << verdict_json(brute) << "\n";
    return characterizing.pass && brute.pass ? 0 : 1;
}
