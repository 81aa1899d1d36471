#pragma once

#include <cauchy/errors.hpp>
#include <cauchy/partitions.hpp>
#include <cauchy/spectrum.hpp>
#include <cauchy/weyl_characters.hpp>
#include <cauchy/series_oracle.hpp>
#include <cauchy/cauchy_kernels.hpp>
#include <cauchy/haar_sampling.hpp>
#include <cauchy/uniformity_tests.hpp>
