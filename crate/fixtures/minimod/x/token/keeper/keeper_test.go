package keeper

import "example.com/minichain/x/token/types"

type fakeServer struct{}

func (f fakeServer) Transfer(ctx types.Context, msg types.MsgTransfer) error { return nil }

func (f fakeServer) Burn(ctx types.Context, msg types.MsgBurn) error { return nil }

// BeginBlock on a test double must never become an entry point.
func (f fakeServer) BeginBlock(ctx types.Context) {
	panic("test-only panic")
}
