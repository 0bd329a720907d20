import { Component, OnInit } from '@angular/core';
import { Subject, takeUntil } from 'rxjs';
import { map } from 'rxjs/operators';
import { UserService } from './user.service';

@Component({ selector: 'app-user', template: '<p>{{ name }}</p>' })
export class UserComponent implements OnInit {
  private readonly destroy$ = new Subject<void>();
  name = '';

  constructor(private users: UserService) {}

  ngOnInit(): void {
    this.users.current$.pipe(map(u => u.name), takeUntil(this.destroy$)).subscribe(n => (this.name = n));
  }

  ngOnDestroy() {
    this.destroy$.next();
    this.destroy$.complete();
  }
}
