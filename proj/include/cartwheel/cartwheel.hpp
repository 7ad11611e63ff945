#pragma once

#include "cartwheel/axle.hpp"
#include "cartwheel/configuration.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/hubcap.hpp"
#include "cartwheel/lint.hpp"
#include "cartwheel/outlet.hpp"
#include "cartwheel/presentation.hpp"
#include "cartwheel/question.hpp"
#include "cartwheel/reducibility.hpp"
#include "cartwheel/rules.hpp"
#include "cartwheel/skeleton.hpp"
