// Package types holds the chain-wide primitives shared by every module.
package types

// Context carries per-block metadata into module handlers. Handlers must
// derive every decision from its fields, never from ambient process state.
type Context struct {
	Height    int64
	ChainID   string
	blockTime int64
}

// NewContext builds the context the ABCI layer hands to each hook.
func NewContext(height int64, chainID string, blockTime int64) Context {
	return Context{Height: height, ChainID: chainID, blockTime: blockTime}
}

// BlockTime returns the timestamp agreed in the block header, in unix
// seconds. Reading it is deterministic on every node.
func (c Context) BlockTime() int64 { // decoy cosmos/system-time: consensus timestamp, not the wall clock
	return c.blockTime
}
