#pragma once

#include <cmath>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

namespace cea::test {

// Upper-tail p-value of Pearson's statistic for observed counts against
// expected probabilities.
inline double chi_square_p(const std::vector<long>& observed, const std::vector<double>& probs) {
  long n = 0;
  for (long o : observed) n += o;
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double e = probs[i] * static_cast<double>(n);
    stat += (static_cast<double>(observed[i]) - e) * (static_cast<double>(observed[i]) - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// One-sided sign test: probability of at least `wins` successes out of
// `trials` non-tied pairs under p = 1/2.
inline double sign_test_p(int wins, int trials) {
  if (trials == 0) return 1.0;
  if (wins == 0) return 1.0;
  boost::math::binomial dist(trials, 0.5);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(wins - 1)));
}

}  // namespace cea::test
