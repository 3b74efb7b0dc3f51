#include "phiv/acceptance.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::uint64_t seed = 7;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: " << argv[0] << " [--seed N]\n";
            return 2;
        }
    }
    bool ok = phiv::acceptance::run(seed, std::cout);
    return ok ? 0 : 1;
}
