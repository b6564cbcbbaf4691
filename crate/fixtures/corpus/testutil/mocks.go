// Package testutil provides hand-written mocks for keeper unit tests.
package testutil

// MockBankKeeper records calls instead of touching real state. It implements
// the expected-keeper interfaces used in tests, not any MsgServer.
type MockBankKeeper struct {
	Calls []string
}

// SpendableBalance returns a canned balance.
func (m *MockBankKeeper) SpendableBalance(addr string) int64 {
	m.Calls = append(m.Calls, "SpendableBalance "+addr)
	return 42
}

// FailNow aborts the test run from inside a mock expectation.
func (m *MockBankKeeper) FailNow(reason string) {
	panic("mock expectation failed: " + reason) // decoy cosmos/block-panic: test scaffolding
}
