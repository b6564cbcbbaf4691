package types

// Context carries block metadata into handlers.
type Context struct {
	Height int64
}

type MsgTransfer struct {
	From   string
	To     string
	Amount uint64
}

type MsgBurn struct {
	From   string
	Amount uint64
}

// MsgServer is the transaction-handling surface of the token module.
type MsgServer interface {
	Transfer(ctx Context, msg MsgTransfer) error
	Burn(ctx Context, msg MsgBurn) error
}
