#pragma once

#include "treedist/rational.hpp"
#include "treedist/merge_tree.hpp"
#include "treedist/metric_tree.hpp"
#include "treedist/degree_bound.hpp"
#include "treedist/augmentation.hpp"
#include "treedist/decision.hpp"
#include "treedist/optimization.hpp"
#include "treedist/gh.hpp"
#include "treedist/oracle.hpp"
#include "treedist/io.hpp"
