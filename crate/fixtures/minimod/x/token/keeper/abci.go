package keeper

import "example.com/minichain/x/token/types"

// BeginBlock settles pending mint operations at the start of each block.
func (k Keeper) BeginBlock(ctx types.Context) {
	k.mint(ctx.Height)
}

// InitChain seeds genesis state; deliberately not an ABCI entry here.
func (k Keeper) InitChain(ctx types.Context) {
	k.supply["genesis"] = 1
}

func (k Keeper) mint(height int64) {
	k.moveCoins("reserve", "rewards", uint64(height))
}
