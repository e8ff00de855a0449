#pragma once

#include <initializer_list>

#include <Eigen/Core>
#include <gtest/gtest.h>

namespace oracle {

inline void expect_near(const Eigen::VectorXd& a, std::initializer_list<double> b, double tol,
                        const char* what = "") {
  ASSERT_EQ(static_cast<std::size_t>(a.size()), b.size()) << what;
  std::size_t j = 0;
  for (double v : b) {
    EXPECT_NEAR(a[static_cast<Eigen::Index>(j)], v, tol) << what << " entry " << j;
    ++j;
  }
}


}  // namespace oracle
