// Package keeper implements liveness tracking and jailing.
package keeper

import (
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/slash/types"
)

// Keeper tracks missed blocks per validator.
type Keeper struct {
	params    types.Params
	missed    int64
	jailUntil int64
}

// Params returns the current parameter set.
func (k Keeper) Params(ctx roottypes.Context) types.Params {
	return k.params
}
