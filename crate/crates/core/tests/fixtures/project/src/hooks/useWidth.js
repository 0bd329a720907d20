import { useEffect, useState } from 'react';

export function useWidth() {
  const [w, setW] = useState(window.innerWidth);
  useEffect(() => {
    window.addEventListener('resize', () => setW(window.innerWidth));
  }, []);
  return w;
}
