#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pmb {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

enum class Err {
  None = 0,
  Parse,
  InvalidArg,
  AllCubicsZero,
  ZeroCurvature,
  RankDeficient,
  NotPositiveDefinite,
  DegeneratePlane,
  AllCoefficientsZero,
  BranchCountMismatch,
  SpectralTolerance,
  NewtonDiverged,
  JacobianRankDrop,
  SeedOnSingularSet,
  StepUnderflow,
  ProjectionFailed,
  NotNormallyHyperbolic,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

const char* err_name(Err e);

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kDefaultSeed = 0x5eedB01dull;

// Runs fn(i) for i in [0,n). nthreads<=1 runs inline.
void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& fn);

}  // namespace pmb
