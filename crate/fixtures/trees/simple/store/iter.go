package store

// Keys returns the addresses in unspecified order.
func (s *Store) Keys() []string {
	keys := make([]string, 0, len(s.balances))
	for k := range s.balances {
		keys = append(keys, k)
	}
	return keys
}
