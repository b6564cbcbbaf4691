// Package app wires the module keepers into the ABCI block lifecycle.
package app

import (
	"example.com/demochain/types"
	distkeeper "example.com/demochain/x/dist/keeper"
	epochskeeper "example.com/demochain/x/epochs/keeper"
	govkeeper "example.com/demochain/x/gov/keeper"
	mintkeeper "example.com/demochain/x/mint/keeper"
	oraclekeeper "example.com/demochain/x/oracle/keeper"
	slashkeeper "example.com/demochain/x/slash/keeper"
	supplykeeper "example.com/demochain/x/supply/keeper"
	upgradekeeper "example.com/demochain/x/upgrade/keeper"
)

// App is the top-level ABCI application.
type App struct {
	mint    mintkeeper.Keeper
	dist    distkeeper.Keeper
	slash   slashkeeper.Keeper
	oracle  oraclekeeper.Keeper
	supply  supplykeeper.Keeper
	gov     govkeeper.Keeper
	epochs  epochskeeper.Keeper
	upgrade upgradekeeper.Keeper
}

// BeginBlock runs every module's begin-block hook in a fixed order.
func (a *App) BeginBlock(ctx types.Context) {
	a.upgrade.BeginBlock(ctx)
	a.mint.BeginBlock(ctx)
	a.slash.BeginBlock(ctx)
	a.epochs.BeginBlock(ctx)
}

// EndBlock runs the end-block hooks in a fixed order.
func (a *App) EndBlock(ctx types.Context) {
	a.dist.EndBlock(ctx)
	a.oracle.EndBlock(ctx)
	a.gov.EndBlock(ctx)
}

// InitChain seeds genesis state. It runs once, before the first block, and
// is not part of the per-block consensus surface.
func (a *App) InitChain(ctx types.Context) {
	a.supply.Seed(ctx)
}

// Commit flushes the committed state root.
func (a *App) Commit() []byte {
	return []byte("app-hash")
}
