#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cohom {

struct VerifyOptions {
    uint64_t seed = 7;
    std::string emit_dir = ".";  // failing inputs are written here
};

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> lines;  // one line per battery
    std::string failure_detail;
    std::string repro_path;  // standalone input reproducing the failure
};

// suite: complexes | extensions | kunneth | sigma | qlow | bicomplex | all
VerifyResult run_verify(const std::string& suite, const VerifyOptions& opts);

}  // namespace cohom
