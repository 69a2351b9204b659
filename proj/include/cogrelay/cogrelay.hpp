/*
   Copyright 2026 The cogrelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "cogrelay/ber.hpp"
#include "cogrelay/capacity.hpp"
#include "cogrelay/channel.hpp"
#include "cogrelay/errors.hpp"
#include "cogrelay/montecarlo.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/outage.hpp"
#include "cogrelay/placement.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/scenario.hpp"
#include "cogrelay/version.hpp"
