#pragma once
#include <string>
#include <vector>
namespace sskdv::cli {
int run(const std::vector<std::string>& argv);
}
