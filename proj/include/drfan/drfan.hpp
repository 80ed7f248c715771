#pragma once

#include "drfan/error.hpp"
#include "drfan/linalg.hpp"
#include "drfan/graph.hpp"
#include "drfan/weighting.hpp"
#include "drfan/polyhedral.hpp"
#include "drfan/cone.hpp"
#include "drfan/fan.hpp"
#include "drfan/oracle.hpp"
#include "drfan/io.hpp"
