// Copyright 2026 The rtsarena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Unit and ability tables for all three factions.
//
// F3 (Protoss-like) names, costs and descriptions follow the printed
// in-game ability text. F1 (Terran-like) and F2 (Zerg-like) values are set
// by analogy and kept here so balance changes live in one place.
// Times are ticks at 16 ticks per game second.

#include <stdexcept>

#include "rtsarena/sim/catalog.hpp"

namespace rtsarena::sim {
namespace {

constexpr int kSec = 16;

UnitKindDef unit(std::string name, Faction f, UnitClass cls) {
  UnitKindDef k;
  k.name = std::move(name);
  k.faction = f;
  k.cls = cls;
  return k;
}

UnitKindDef structure(std::string name, Faction f, StructureRole role, int hp, int shield,
                      int minerals, int vespene, int build_seconds) {
  UnitKindDef k;
  k.name = std::move(name);
  k.faction = f;
  k.cls = UnitClass::kStructure;
  k.role = role;
  k.max_health = hp;
  k.max_shield = shield;
  k.minerals = minerals;
  k.vespene = vespene;
  k.build_time = build_seconds * kSec;
  k.sight = 9;
  k.needs_power = (f == Faction::F3) && role != StructureRole::kHeadquarters &&
                  role != StructureRole::kSupply && role != StructureRole::kExtractor;
  return k;
}

struct Combat {
  int hp, shield, dmg, range, cooldown, move_period, sight, supply, minerals, vespene,
      build_seconds;
};

UnitKindDef fighter(std::string name, Faction f, UnitClass cls, Combat c) {
  UnitKindDef k = unit(std::move(name), f, cls);
  k.max_health = c.hp;
  k.max_shield = c.shield;
  k.damage = c.dmg;
  k.range = c.range;
  k.cooldown = c.cooldown;
  k.move_period = c.move_period;
  k.sight = c.sight;
  k.supply_cost = c.supply;
  k.minerals = c.minerals;
  k.vespene = c.vespene;
  k.build_time = c.build_seconds * kSec;
  return k;
}

AbilityDef make_ability(std::string name, std::optional<Faction> f, TargetKind t, Effect e,
                   std::string description) {
  AbilityDef a;
  a.name = std::move(name);
  a.faction = f;
  a.target = t;
  a.effect = e;
  a.description = std::move(description);
  return a;
}

AbilityDef with_cost(AbilityDef a, int minerals, int vespene) {
  a.minerals = minerals;
  a.vespene = vespene;
  return a;
}

AbilityDef produces(AbilityDef a, std::string kind, std::vector<std::string> req = {}) {
  a.produces = std::move(kind);
  a.requires_structures = std::move(req);
  return a;
}

const std::vector<std::string> kArmyOrders = {"MOVE_MOVE", "ATTACK_ATTACK"};
const std::vector<std::string> kWorkerAutomation = {"HARVEST_GATHER", "MOVE_MOVE",
                                                    "ATTACK_ATTACK"};

}  // namespace

Catalog::Catalog() {
  using enum UnitClass;
  using enum StructureRole;
  constexpr auto T = Faction::F1;
  constexpr auto Z = Faction::F2;
  constexpr auto P = Faction::F3;

  // ---- neutral nodes ----
  {
    UnitKindDef m;
    m.name = "MineralField";
    m.cls = kMineralField;
    m.max_health = 1;
    m.harvester_capacity = 2;
    m.resource_amount = 1500;
    m.sight = 0;
    mineral_field_ = static_cast<KindId>(kinds_.size());
    kinds_.push_back(m);
    UnitKindDef g = m;
    g.name = "VespeneGeyser";
    g.cls = kGeyser;
    g.harvester_capacity = 0;
    g.resource_amount = 2250;
    geyser_ = static_cast<KindId>(kinds_.size());
    kinds_.push_back(g);
  }

  // ---- F3: Protoss-like ----
  {
    auto probe = fighter("Probe", P, kWorker, {20, 20, 5, 1, 17, 4, 8, 1, 50, 0, 12});
    probe.abilities = {"PROTOSSBUILD_NEXUS",    "PROTOSSBUILD_PYLON",
                       "PROTOSSBUILD_ASSIMILATOR", "PROTOSSBUILD_GATEWAY",
                       "PROTOSSBUILD_FORGE",    "PROTOSSBUILD_TWILIGHTCOUNCIL",
                       "PROTOSSBUILD_STARGATE", "PROTOSSBUILD_ROBOTICSFACILITY",
                       "PROTOSSBUILD_CYBERNETICSCORE", "BUILD_SHIELDBATTERY"};
    probe.automation = kWorkerAutomation;
    kinds_.push_back(probe);
    auto zealot = fighter("Zealot", P, kArmy, {100, 50, 16, 1, 19, 5, 9, 2, 100, 0, 27});
    auto stalker = fighter("Stalker", P, kArmy, {80, 80, 13, 6, 21, 4, 10, 2, 125, 50, 30});
    auto sentry = fighter("Sentry", P, kArmy, {40, 40, 6, 5, 11, 5, 10, 2, 50, 100, 26});
    auto adept = fighter("Adept", P, kArmy, {70, 70, 10, 4, 26, 4, 9, 2, 100, 25, 30});
    for (auto* k : {&zealot, &stalker, &sentry, &adept}) {
      k->abilities = kArmyOrders;
      kinds_.push_back(*k);
    }

    auto nexus = structure("Nexus", P, kHeadquarters, 1000, 1000, 400, 0, 71);
    nexus.max_energy = 200;
    nexus.start_energy = 50;
    nexus.sight = 11;
    nexus.supply_provided = 15;
    nexus.abilities = {"NEXUSTRAIN_PROBE", "EFFECT_CHRONOBOOSTENERGYCOST",
                       "EFFECT_MASSRECALL_NEXUS"};
    kinds_.push_back(nexus);
    auto pylon = structure("Pylon", P, kSupply, 200, 200, 100, 0, 18);
    pylon.supply_provided = 8;
    kinds_.push_back(pylon);
    auto assimilator = structure("Assimilator", P, kExtractor, 300, 300, 75, 0, 21);
    assimilator.harvester_capacity = 3;
    kinds_.push_back(assimilator);
    auto gateway = structure("Gateway", P, kProduction, 500, 500, 150, 0, 46);
    gateway.abilities = {"GATEWAYTRAIN_ZEALOT", "GATEWAYTRAIN_STALKER", "GATEWAYTRAIN_SENTRY",
                         "TRAIN_ADEPT"};
    kinds_.push_back(gateway);
    auto core = structure("CyberneticsCore", P, kTech, 550, 550, 150, 0, 36);
    core.abilities = {"CYBERNETICSCORERESEARCH_PROTOSSAIRWEAPONSLEVEL1",
                      "CYBERNETICSCORERESEARCH_PROTOSSAIRARMORLEVEL1", "RESEARCH_WARPGATE"};
    kinds_.push_back(core);
    kinds_.push_back(structure("Forge", P, kTech, 400, 400, 150, 0, 32));
    kinds_.push_back(structure("TwilightCouncil", P, kTech, 500, 500, 150, 100, 36));
    kinds_.push_back(structure("Stargate", P, kProduction, 600, 600, 150, 150, 43));
    kinds_.push_back(structure("RoboticsFacility", P, kProduction, 450, 450, 150, 100, 46));
    kinds_.push_back(structure("ShieldBattery", P, kTech, 150, 150, 100, 0, 29));
  }

  // ---- F1: Terran-like ----
  {
    auto scv = fighter("SCV", T, kWorker, {45, 0, 5, 1, 17, 4, 8, 1, 50, 0, 12});
    scv.abilities = {"TERRANBUILD_COMMANDCENTER", "TERRANBUILD_SUPPLYDEPOT",
                     "TERRANBUILD_REFINERY",      "TERRANBUILD_BARRACKS",
                     "TERRANBUILD_FACTORY",       "EFFECT_REPAIR"};
    scv.automation = kWorkerAutomation;
    kinds_.push_back(scv);
    auto mule = fighter("MULE", T, kWorker, {60, 0, 0, 0, 0, 4, 8, 0, 0, 0, 0});
    mule.automation = {"HARVEST_GATHER", "MOVE_MOVE"};
    kinds_.push_back(mule);
    auto marine = fighter("Marine", T, kArmy, {45, 0, 6, 5, 10, 5, 9, 1, 50, 0, 18});
    auto marauder = fighter("Marauder", T, kArmy, {125, 0, 10, 6, 17, 5, 10, 2, 100, 25, 21});
    auto tank = fighter("SiegeTank", T, kArmy, {175, 0, 15, 7, 17, 6, 11, 3, 150, 125, 32});
    for (auto* k : {&marine, &marauder, &tank}) {
      k->abilities = kArmyOrders;
      kinds_.push_back(*k);
    }

    auto cc = structure("CommandCenter", T, kHeadquarters, 1500, 0, 400, 0, 71);
    cc.sight = 11;
    cc.supply_provided = 15;
    cc.abilities = {"COMMANDCENTERTRAIN_SCV", "UPGRADETOORBITAL_ORBITALCOMMAND"};
    kinds_.push_back(cc);
    auto orbital = structure("OrbitalCommand", T, kHeadquarters, 1500, 0, 550, 0, 25);
    orbital.sight = 11;
    orbital.supply_provided = 15;
    orbital.max_energy = 200;
    orbital.start_energy = 50;
    orbital.abilities = {"COMMANDCENTERTRAIN_SCV", "CALLDOWNMULE_CALLDOWNMULE"};
    kinds_.push_back(orbital);
    auto depot = structure("SupplyDepot", T, kSupply, 400, 0, 100, 0, 21);
    depot.supply_provided = 8;
    kinds_.push_back(depot);
    auto refinery = structure("Refinery", T, kExtractor, 500, 0, 75, 0, 21);
    refinery.harvester_capacity = 3;
    kinds_.push_back(refinery);
    auto barracks = structure("Barracks", T, kProduction, 1000, 0, 150, 0, 46);
    barracks.abilities = {"BARRACKSTRAIN_MARINE", "BARRACKSTRAIN_MARAUDER",
                          "BUILD_TECHLAB_BARRACKS"};
    kinds_.push_back(barracks);
    kinds_.push_back(structure("BarracksTechLab", T, kAddon, 400, 0, 50, 25, 18));
    auto factory = structure("Factory", T, kProduction, 1250, 0, 150, 100, 43);
    factory.abilities = {"FACTORYTRAIN_SIEGETANK", "BUILD_TECHLAB_FACTORY"};
    kinds_.push_back(factory);
    kinds_.push_back(structure("FactoryTechLab", T, kAddon, 400, 0, 50, 25, 18));
  }

  // ---- F2: Zerg-like ----
  {
    auto drone = fighter("Drone", Z, kWorker, {40, 0, 5, 1, 17, 4, 8, 1, 50, 0, 12});
    drone.abilities = {"ZERGBUILD_HATCHERY", "ZERGBUILD_EXTRACTOR", "ZERGBUILD_SPAWNINGPOOL",
                       "ZERGBUILD_ROACHWARREN", "ZERGBUILD_HYDRALISKDEN"};
    drone.automation = kWorkerAutomation;
    kinds_.push_back(drone);
    auto overlord = fighter("Overlord", Z, kSupplyUnit, {200, 0, 0, 0, 0, 18, 11, 0, 100, 0, 18});
    overlord.supply_provided = 8;
    overlord.abilities = {"MOVE_MOVE"};
    kinds_.push_back(overlord);
    auto queen = fighter("Queen", Z, kArmy, {175, 0, 8, 5, 11, 8, 9, 2, 150, 0, 36});
    queen.max_energy = 200;
    queen.start_energy = 25;
    queen.abilities = {"MOVE_MOVE", "ATTACK_ATTACK", "EFFECT_INJECTLARVA"};
    kinds_.push_back(queen);
    auto ling = fighter("Zergling", Z, kArmy, {35, 0, 5, 1, 8, 3, 8, 1, 25, 0, 17});
    auto roach = fighter("Roach", Z, kArmy, {145, 0, 16, 4, 23, 5, 9, 2, 75, 25, 19});
    auto hydra = fighter("Hydralisk", Z, kArmy, {90, 0, 12, 5, 9, 5, 9, 2, 100, 50, 24});
    for (auto* k : {&ling, &roach, &hydra}) {
      k->abilities = kArmyOrders;
      kinds_.push_back(*k);
    }

    const std::vector<std::string> hatch_abilities = {
        "LARVATRAIN_DRONE",     "LARVATRAIN_OVERLORD",  "LARVATRAIN_ZERGLING",
        "LARVATRAIN_ROACH",     "LARVATRAIN_HYDRALISK", "TRAINQUEEN_QUEEN",
        "UPGRADETOLAIR_LAIR"};
    auto hatch = structure("Hatchery", Z, kHeadquarters, 1500, 0, 300, 0, 71);
    hatch.sight = 11;
    hatch.supply_provided = 6;
    hatch.abilities = hatch_abilities;
    kinds_.push_back(hatch);
    auto lair = structure("Lair", Z, kHeadquarters, 2000, 0, 450, 100, 57);
    lair.sight = 11;
    lair.supply_provided = 6;
    lair.abilities = {hatch_abilities.begin(), hatch_abilities.end() - 1};
    kinds_.push_back(lair);
    auto extractor = structure("Extractor", Z, kExtractor, 500, 0, 25, 0, 21);
    extractor.harvester_capacity = 3;
    kinds_.push_back(extractor);
    kinds_.push_back(structure("SpawningPool", Z, kTech, 1000, 0, 200, 0, 46));
    kinds_.push_back(structure("RoachWarren", Z, kTech, 850, 0, 150, 0, 39));
    kinds_.push_back(structure("HydraliskDen", Z, kTech, 850, 0, 100, 100, 29));
  }

  // ---- abilities: shared ----
  constexpr auto kNoTarget = TargetKind::kNone;
  constexpr auto kPoint = TargetKind::kPoint;
  constexpr auto kUnit = TargetKind::kUnit;
  constexpr auto kPointOrUnit = TargetKind::kPointOrUnit;
  using enum Effect;
  abilities_.push_back(make_ability("ATTACK_ATTACK", std::nullopt, kPointOrUnit, kAttack,
                               "Attack some unit or structure."));
  abilities_.push_back(
      make_ability("MOVE_MOVE", std::nullopt, kPointOrUnit, kMove, "Move to target position."));
  abilities_.push_back(make_ability("HARVEST_GATHER", std::nullopt, kUnit, kGather,
                               "Gather resources from a mineral field or an extractor."));

  // ---- abilities: F3 ----
  auto build = [&](std::string name, Faction f, TargetKind t, std::string kind,
                   std::vector<std::string> req, std::string text) {
    const auto& k = kinds_.at(kind_id(kind));
    abilities_.push_back(produces(with_cost(make_ability(std::move(name), f, t, kBuild, std::move(text)),
                                            k.minerals, k.vespene),
                                  kind, std::move(req)));
  };
  auto train = [&](std::string name, Faction f, Effect e, std::string kind,
                   std::vector<std::string> req, std::string text) {
    const auto& k = kinds_.at(kind_id(kind));
    abilities_.push_back(produces(
        with_cost(make_ability(std::move(name), f, kNoTarget, e, std::move(text)), k.minerals, k.vespene),
        kind, std::move(req)));
  };
  auto research = [&](std::string name, Faction f, std::string tech, int m, int v, int seconds,
                      std::string text) {
    auto a = with_cost(make_ability(std::move(name), f, kNoTarget, kResearch, std::move(text)), m, v);
    a.tech = std::move(tech);
    a.research_time = seconds * kSec;
    abilities_.push_back(std::move(a));
  };

  build("PROTOSSBUILD_ASSIMILATOR", P, kUnit, "Assimilator", {},
        "Build an assimilator, built on a Vespene Geyser that allows Probes to harvest gas.");
  build("PROTOSSBUILD_CYBERNETICSCORE", P, kPoint, "CyberneticsCore", {"Gateway"},
        "Build a Cybernetics Core.");
  build("PROTOSSBUILD_FORGE", P, kPoint, "Forge", {"Pylon"}, "Build a Forge.");
  build("PROTOSSBUILD_GATEWAY", P, kPoint, "Gateway", {"Pylon"},
        "Build a Gateway to training ground units.");
  build("PROTOSSBUILD_NEXUS", P, kPoint, "Nexus", {}, "Build a Nexus.");
  build("PROTOSSBUILD_PYLON", P, kPoint, "Pylon", {},
        "Build a Pylon, providing supply and projects a power field.");
  build("PROTOSSBUILD_ROBOTICSFACILITY", P, kPoint, "RoboticsFacility", {"CyberneticsCore"},
        "Build a Robotics Facility.");
  build("PROTOSSBUILD_STARGATE", P, kPoint, "Stargate", {"CyberneticsCore"},
        "Build a Protoss Stargate.");
  build("PROTOSSBUILD_TWILIGHTCOUNCIL", P, kPoint, "TwilightCouncil", {"CyberneticsCore"},
        "Build a Twilight Council.");
  build("BUILD_SHIELDBATTERY", P, kPoint, "ShieldBattery", {"CyberneticsCore"},
        "Build a Shield Battery to restore shields of a single friendly unit or building "
        "within 6 range.");
  train("NEXUSTRAIN_PROBE", P, kTrain, "Probe", {}, "Train a Probe.");
  {
    auto chrono = make_ability("EFFECT_CHRONOBOOSTENERGYCOST", P, kUnit, kChrono,
                          "Reduce the unit production time or technological research time of "
                          "the target building.");
    chrono.energy = 50;
    abilities_.push_back(chrono);
    auto recall = make_ability("EFFECT_MASSRECALL_NEXUS", P, kPoint, kMassRecall,
                          "Instantly teleport the unit back to its current location.");
    recall.energy = 50;
    abilities_.push_back(recall);
  }
  train("GATEWAYTRAIN_ZEALOT", P, kTrain, "Zealot", {},
        "Train a Zealot, a durable frontline warrior that charges to rapidly close with and "
        "attack ground enemies.");
  train("GATEWAYTRAIN_STALKER", P, kTrain, "Stalker", {"CyberneticsCore"},
        "Train a Stalker, a mobile ranged warrior that can Blink to outmaneuver foes and attack "
        "both ground and air targets.");
  train("GATEWAYTRAIN_SENTRY", P, kTrain, "Sentry", {"CyberneticsCore"},
        "Train a Sentry, a tactical support caster that manipulates the battlefield with Force "
        "Fields and protects allies with a Guardian Shield.");
  train("TRAIN_ADEPT", P, kTrain, "Adept", {"CyberneticsCore"},
        "Train an Adept, a ranged warrior that projects a psionic shade to teleport past enemy "
        "forces and harass light units.");
  research("CYBERNETICSCORERESEARCH_PROTOSSAIRWEAPONSLEVEL1", P, "ProtossAirWeaponsLevel1", 100,
           100, 129, "Upgrades the damage of Protoss air units.");
  research("CYBERNETICSCORERESEARCH_PROTOSSAIRARMORLEVEL1", P, "ProtossAirArmorLevel1", 150, 150,
           129, "Upgrades the armor of Protoss air units.");
  research("RESEARCH_WARPGATE", P, "WarpGate", 50, 50, 100,
           "Research Warp Gate technology, shortening Gateway training time.");

  // ---- abilities: F1 ----
  build("TERRANBUILD_COMMANDCENTER", T, kPoint, "CommandCenter", {}, "Build a Command Center.");
  build("TERRANBUILD_SUPPLYDEPOT", T, kPoint, "SupplyDepot", {},
        "Build a Supply Depot, providing supply.");
  build("TERRANBUILD_REFINERY", T, kUnit, "Refinery", {},
        "Build a Refinery on a Vespene Geyser that allows SCVs to harvest gas.");
  build("TERRANBUILD_BARRACKS", T, kPoint, "Barracks", {"SupplyDepot"},
        "Build a Barracks to train infantry.");
  build("TERRANBUILD_FACTORY", T, kPoint, "Factory", {"Barracks"},
        "Build a Factory to produce mechanical units.");
  abilities_.push_back(make_ability("EFFECT_REPAIR", T, kUnit, kRepair,
                               "Repair a damaged structure or mechanical unit."));
  train("COMMANDCENTERTRAIN_SCV", T, kTrain, "SCV", {}, "Train an SCV.");
  {
    auto orbital = with_cost(
        make_ability("UPGRADETOORBITAL_ORBITALCOMMAND", T, kNoTarget, kMorph,
                "Upgrade the Command Center to an Orbital Command that can call down MULEs."),
        150, 0);
    orbital.produces = "OrbitalCommand";
    orbital.requires_structures = {"Barracks"};
    abilities_.push_back(orbital);
    auto mule = make_ability("CALLDOWNMULE_CALLDOWNMULE", T, kUnit, kCallDownMule,
                        "Call down a MULE on a mineral field to boost mining temporarily.");
    mule.energy = 50;
    mule.produces = "MULE";
    abilities_.push_back(mule);
  }
  train("BARRACKSTRAIN_MARINE", T, kTrain, "Marine", {}, "Train a Marine, a basic infantry unit.");
  train("BARRACKSTRAIN_MARAUDER", T, kTrain, "Marauder", {},
        "Train a Marauder, an armored infantry unit. Requires a Tech Lab.");
  abilities_.back().requires_addon = true;
  train("FACTORYTRAIN_SIEGETANK", T, kTrain, "SiegeTank", {},
        "Train a Siege Tank, a long-range artillery unit. Requires a Tech Lab.");
  abilities_.back().requires_addon = true;
  {
    auto lab = with_cost(make_ability("BUILD_TECHLAB_BARRACKS", T, kNoTarget, kBuildAddon,
                                 "Build a Tech Lab add-on for this Barracks."),
                         50, 25);
    lab.produces = "BarracksTechLab";
    abilities_.push_back(lab);
    lab.name = "BUILD_TECHLAB_FACTORY";
    lab.produces = "FactoryTechLab";
    lab.description = "Build a Tech Lab add-on for this Factory.";
    abilities_.push_back(lab);
  }

  // ---- abilities: F2 ----
  build("ZERGBUILD_HATCHERY", Z, kPoint, "Hatchery", {}, "Morph the Drone into a Hatchery.");
  build("ZERGBUILD_EXTRACTOR", Z, kUnit, "Extractor", {},
        "Morph the Drone into an Extractor on a Vespene Geyser.");
  build("ZERGBUILD_SPAWNINGPOOL", Z, kPoint, "SpawningPool", {},
        "Morph the Drone into a Spawning Pool, unlocking Zerglings and Queens.");
  build("ZERGBUILD_ROACHWARREN", Z, kPoint, "RoachWarren", {"SpawningPool"},
        "Morph the Drone into a Roach Warren, unlocking Roaches.");
  build("ZERGBUILD_HYDRALISKDEN", Z, kPoint, "HydraliskDen", {"Lair"},
        "Morph the Drone into a Hydralisk Den, unlocking Hydralisks.");
  train("LARVATRAIN_DRONE", Z, kTrainLarva, "Drone", {}, "Morph a larva into a Drone.");
  train("LARVATRAIN_OVERLORD", Z, kTrainLarva, "Overlord", {},
        "Morph a larva into an Overlord, providing supply.");
  train("LARVATRAIN_ZERGLING", Z, kTrainLarva, "Zergling", {"SpawningPool"},
        "Morph a larva into a Zergling, a fast melee unit.");
  train("LARVATRAIN_ROACH", Z, kTrainLarva, "Roach", {"RoachWarren"},
        "Morph a larva into a Roach, an armored ranged unit.");
  train("LARVATRAIN_HYDRALISK", Z, kTrainLarva, "Hydralisk", {"HydraliskDen"},
        "Morph a larva into a Hydralisk, a versatile ranged unit.");
  train("TRAINQUEEN_QUEEN", Z, kTrain, "Queen", {"SpawningPool"},
        "Train a Queen, a defensive unit that can inject larva.");
  {
    auto lair = with_cost(make_ability("UPGRADETOLAIR_LAIR", Z, kNoTarget, kMorph,
                                  "Upgrade the Hatchery to a Lair, unlocking mid-game tech."),
                          150, 100);
    lair.produces = "Lair";
    lair.requires_structures = {"SpawningPool"};
    abilities_.push_back(lair);
    auto inject = make_ability("EFFECT_INJECTLARVA", Z, kUnit, kInjectLarva,
                          "Inject a Hatchery to spawn additional larva.");
    inject.energy = 25;
    abilities_.push_back(inject);
  }

  // Every ability named by a unit kind must exist in the table.
  for (const auto& k : kinds_) {
    for (const auto* list : {&k.abilities, &k.automation}) {
      for (const auto& name : *list) {
        if (!k.faction || !find_ability(*k.faction, name)) {
          throw std::logic_error("catalog: " + k.name + " references unknown ability " + name);
        }
      }
    }
  }
}

}  // namespace rtsarena::sim
