#pragma once

#include "pierce/real.hpp"
#include "pierce/rational.hpp"
#include "pierce/word.hpp"
#include "pierce/expansion.hpp"
#include "pierce/intervals.hpp"
#include "pierce/profile.hpp"
#include "pierce/bounds.hpp"
#include "pierce/limits.hpp"
#include "pierce/sets.hpp"
#include "pierce/spec_json.hpp"
#include "pierce/dimension.hpp"
#include "pierce/laws.hpp"
