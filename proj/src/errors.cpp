#include "vintage/errors.hpp"

namespace vintage {

std::string ConfigError::join(const std::vector<std::string>& issues) {
    std::string msg = "configuration invalid:";
    for (const auto& issue : issues) {
        msg += "\n  - ";
        msg += issue;
    }
    return msg;
}

} // namespace vintage
