#pragma once

#include "construct.hpp"
#include "counting.hpp"
#include "forest.hpp"
#include "graph.hpp"
#include "linear.hpp"
#include "pace_io.hpp"
#include "polyring.hpp"
