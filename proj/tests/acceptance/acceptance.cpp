#include <exception>
#include <iostream>

#include "conformal_zeta/suite.hpp"

int main() {
  try {
    const auto doc = cz::run_suite();
    std::cout << cz::summary_lines(doc);
    return doc.overall_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << '\n';
    return 3;
  }
}
