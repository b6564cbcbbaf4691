package types

// Coin is an amount of a single denomination. Amounts are fixed-width so
// arithmetic agrees between 32- and 64-bit validators.
type Coin struct {
	Denom  string
	Amount int64
}

// NewCoin builds a coin.
func NewCoin(denom string, amount int64) Coin {
	return Coin{Denom: denom, Amount: amount}
}

// Add returns the sum of two coins of the same denomination.
func (c Coin) Add(other Coin) Coin {
	return Coin{Denom: c.Denom, Amount: c.Amount + other.Amount}
}
