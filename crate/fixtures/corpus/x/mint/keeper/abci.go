package keeper

import (
	"math/rand"

	roottypes "example.com/demochain/types"
)

// BeginBlock mints the per-block inflation and pays the faucet.
func (k Keeper) BeginBlock(ctx roottypes.Context) {
	p := k.Params(ctx)
	rate := float64(p.MaxInflation) // want cosmos/float-arith*2
	rate = rate / 100.0             // want cosmos/float-arith
	provision := int64(rate) * k.minted
	jitter := rand.Int63n(7) // want cosmos/unsafe-package
	k.credit("demo17s95c5jpc6x2l3edwh4dm8yhac68yru7vlgz8r", provision+jitter) // want cosmos/hardcoded-bech32
}

// InitChain seeds the genesis supply. It is not a per-block entry point, so
// nothing below it is consensus-reachable.
func (k Keeper) InitChain(ctx roottypes.Context) {
	k.seedSupply(ctx)
}

func (k Keeper) seedSupply(ctx roottypes.Context) {
	if k.minted != 0 {
		panic("genesis supply must start at zero") // decoy cosmos/block-panic: only reachable from InitChain
	}
	k.minted = 1000000
}
